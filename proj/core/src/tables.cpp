#include "bianchi/tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace bianchi {

std::string kind_name(StabKind k) {
    switch (k) {
        case StabKind::Trivial: return "trivial";
        case StabKind::Center: return "Z/2";
        case StabKind::Z4: return "Z/4";
        case StabKind::Z6: return "Z/6";
        case StabKind::Q8: return "Q8";
        case StabKind::Te24: return "Te24";
    }
    return "?";
}

GradedF2Space GradedF2Space::table_for(StabKind kind) {
    GradedF2Space t;
    t.kind_ = kind;
    switch (kind) {
        case StabKind::Center:
        case StabKind::Z6:
            t.gens_ = {{"1", 0}};
            t.period_name_ = "t1";
            t.period_degree_ = 1;
            break;
        case StabKind::Z4:
            t.gens_ = {{"1", 0}, {"b1", 1}};
            t.period_name_ = "e2";
            t.period_degree_ = 2;
            break;
        case StabKind::Q8:
            t.gens_ = {{"1", 0}, {"x1", 1}, {"y1", 1}, {"x2", 2}, {"y2", 2}, {"x3", 3}};
            t.period_name_ = "e4";
            t.period_degree_ = 4;
            break;
        case StabKind::Te24:
            t.gens_ = {{"1", 0}, {"b3", 3}};
            t.period_name_ = "e4";
            t.period_degree_ = 4;
            break;
        case StabKind::Trivial:
            throw std::invalid_argument("table_for: trivial stabilizers carry no table");
    }
    return t;
}

int GradedF2Space::dim(int q) const { return static_cast<int>(basis(q).size()); }

std::vector<std::pair<int, int>> GradedF2Space::basis(int q) const {
    std::vector<std::pair<int, int>> out;
    if (q < 0) return out;
    for (int gi = 0; gi < static_cast<int>(gens_.size()); ++gi) {
        int d = gens_[gi].degree;
        if (d <= q && (q - d) % period_degree_ == 0) out.emplace_back((q - d) / period_degree_, gi);
    }
    return out;
}

std::string GradedF2Space::class_name(int power, int gen) const {
    std::string p;
    if (power == 1)
        p = period_name_;
    else if (power > 1)
        p = period_name_ + "^" + std::to_string(power);
    const std::string& g = gens_[gen].name;
    if (g == "1") return p.empty() ? "1" : p;
    return p.empty() ? g : p + g;
}

std::vector<std::string> GradedF2Space::basis_names(int q) const {
    std::vector<std::string> out;
    for (auto [k, g] : basis(q)) out.push_back(class_name(k, g));
    return out;
}

int GradedF2Space::generator_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i)
        if (gens_[i].name == name) return i;
    return -1;
}

GradedClass zero_class(int degree) { return GradedClass{degree, {}}; }

namespace {

void add_term(GradedClass& acc, std::pair<int, int> term) {
    auto it = std::find(acc.terms.begin(), acc.terms.end(), term);
    if (it != acc.terms.end())
        acc.terms.erase(it);
    else
        acc.terms.push_back(term);
}

// gen * gen products per table, expressed as (extra periodicity power,
// generator index) term lists.
std::vector<std::pair<int, int>> generator_product(StabKind kind, int g1, int g2) {
    if (g1 > g2) std::swap(g1, g2);
    if (g1 == 0) return {{0, g2}};  // 1 * x = x
    switch (kind) {
        case StabKind::Center:
        case StabKind::Z6:
            return {{0, 0}};
        case StabKind::Z4:
            // b1 * b1 = 0
            return {};
        case StabKind::Q8:
            // generators 1,x1,y1,x2,y2,x3 with x2 = x1^2, y2 = x1 y1 and the
            // relations y1^2 = x2 + y2, y1 y2 = y1 x2 = x1 y2 = x3, x1 x2 = 0,
            // all products landing in degree 4 and above vanishing into the
            // free-module tail
            if (g1 == 1 && g2 == 1) return {{0, 3}};            // x1 x1 = x2
            if (g1 == 1 && g2 == 2) return {{0, 4}};            // x1 y1 = y2
            if (g1 == 2 && g2 == 2) return {{0, 3}, {0, 4}};    // y1 y1 = x2 + y2
            if (g1 == 1 && g2 == 3) return {};                  // x1 x2 = 0
            if (g1 == 1 && g2 == 4) return {{0, 5}};            // x1 y2 = x3
            if (g1 == 2 && g2 == 3) return {{0, 5}};            // y1 x2 = x3
            if (g1 == 2 && g2 == 4) return {{0, 5}};            // y1 y2 = x3
            return {};  // any product of total degree >= 4
        case StabKind::Te24:
            return {};  // b3 * b3 = 0
        case StabKind::Trivial:
            break;
    }
    throw std::invalid_argument("generator_product: no table");
}

}  // namespace

GradedClass multiply(const GradedF2Space& table, const GradedClass& lhs, const GradedClass& rhs) {
    GradedClass out = zero_class(lhs.degree + rhs.degree);
    for (auto [k1, g1] : lhs.terms)
        for (auto [k2, g2] : rhs.terms)
            for (auto [ke, ge] : generator_product(table.kind(), g1, g2))
                add_term(out, {k1 + k2 + ke, ge});
    std::sort(out.terms.begin(), out.terms.end());
    return out;
}

GradedF2Map::GradedF2Map(GradedF2Space source, GradedF2Space target)
    : source_(std::move(source)), target_(std::move(target)) {}

void GradedF2Map::assign_generator(const std::string& source_gen, const GradedClass& image) {
    int gi = source_.generator_index(source_gen);
    if (gi < 0)
        throw std::invalid_argument("assign_generator: unknown class name " + source_gen);
    if (image.degree != source_.generators()[gi].degree)
        throw std::invalid_argument("assign_generator: degree mismatch for " + source_gen);
    gen_images_[gi] = image;
}

void GradedF2Map::assign_periodicity(const GradedClass& image) {
    if (image.degree != source_.period())
        throw std::invalid_argument("assign_periodicity: degree mismatch");
    period_image_ = image;
    period_assigned_ = true;
}

GradedClass GradedF2Map::image_of_basis(int power, int gen) const {
    if (!period_assigned_)
        throw std::logic_error("GradedF2Map: periodicity image not assigned");
    GradedClass acc;
    if (gen == 0) {
        acc = GradedClass{0, {{0, 0}}};
    } else {
        auto it = gen_images_.find(gen);
        if (it == gen_images_.end())
            throw std::logic_error("GradedF2Map: assignment missing for generator " +
                                   source_.generators()[gen].name);
        acc = it->second;
    }
    for (int i = 0; i < power; ++i) acc = bianchi::multiply(target_, acc, period_image_);
    return acc;
}

F2Matrix GradedF2Map::matrix(int q) const {
    auto src = source_.basis(q);
    auto tgt = target_.basis(q);
    F2Matrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (size_t col = 0; col < src.size(); ++col) {
        GradedClass img = image_of_basis(src[col].first, src[col].second);
        for (auto term : img.terms) {
            auto it = std::find(tgt.begin(), tgt.end(), term);
            if (it == tgt.end()) throw std::logic_error("GradedF2Map: image term out of degree");
            m.set(static_cast<int>(it - tgt.begin()), static_cast<int>(col), true);
        }
    }
    return m;
}

bool GradedF2Map::commutes_with_periodicity(int q_max) const {
    // multiplication by the source periodicity class is the basis shift
    // (k, g) -> (k+1, g); compare map-then-multiply against multiply-then-map
    int p = source_.period();
    for (int q = 0; q + p <= q_max; ++q) {
        auto src_lo = source_.basis(q);
        auto tgt_hi = target_.basis(q + p);
        F2Matrix lhs(static_cast<int>(tgt_hi.size()), static_cast<int>(src_lo.size()));
        F2Matrix rhs = lhs;
        for (size_t col = 0; col < src_lo.size(); ++col) {
            GradedClass img = image_of_basis(src_lo[col].first, src_lo[col].second);
            GradedClass shifted = bianchi::multiply(target_, img, period_image_);
            for (auto term : shifted.terms) {
                auto it = std::find(tgt_hi.begin(), tgt_hi.end(), term);
                if (it == tgt_hi.end()) return false;
                lhs.set(static_cast<int>(it - tgt_hi.begin()), static_cast<int>(col), true);
            }
            GradedClass direct = image_of_basis(src_lo[col].first + 1, src_lo[col].second);
            for (auto term : direct.terms) {
                auto it = std::find(tgt_hi.begin(), tgt_hi.end(), term);
                if (it == tgt_hi.end()) return false;
                rhs.set(static_cast<int>(it - tgt_hi.begin()), static_cast<int>(col), true);
            }
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

namespace {

GradedClass degree_one_class(const GradedF2Space& target, const std::vector<bool>& coords) {
    auto basis = target.basis(1);
    if (coords.size() != basis.size())
        throw std::invalid_argument("canonical_restriction: degree-1 image length mismatch");
    GradedClass cls = zero_class(1);
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i]) cls.terms.push_back(basis[i]);
    return cls;
}

}  // namespace

GradedClass parse_class(const GradedF2Space& table, int degree, const std::string& text) {
    GradedClass cls = zero_class(degree);
    if (text == "0") return cls;
    auto basis = table.basis(degree);
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t plus = text.find('+', pos);
        std::string term = text.substr(pos, plus == std::string::npos ? std::string::npos
                                                                      : plus - pos);
        bool found = false;
        for (size_t i = 0; i < basis.size() && !found; ++i)
            if (table.class_name(basis[i].first, basis[i].second) == term) {
                add_term(cls, basis[i]);
                found = true;
            }
        if (!found)
            throw std::invalid_argument("parse_class: unknown class name '" + term +
                                        "' in degree " + std::to_string(degree));
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    std::sort(cls.terms.begin(), cls.terms.end());
    return cls;
}

GradedF2Map restriction_map(StabKind source, StabKind target,
                            const std::vector<std::pair<std::string, std::string>>& assignment) {
    GradedF2Space src = GradedF2Space::table_for(source);
    GradedF2Space tgt = GradedF2Space::table_for(target);
    GradedF2Map map(src, tgt);
    std::vector<bool> covered(src.generators().size(), false);
    covered[0] = true;  // the unit maps to the unit
    bool period_covered = false;
    for (const auto& [name, expr] : assignment) {
        if (name == src.periodicity_name()) {
            map.assign_periodicity(parse_class(tgt, src.period(), expr));
            period_covered = true;
            continue;
        }
        int gi = src.generator_index(name);
        if (gi < 0)
            throw std::invalid_argument("restriction_map: unknown class name '" + name + "'");
        map.assign_generator(name, parse_class(tgt, src.generators()[gi].degree, expr));
        covered[gi] = true;
    }
    for (size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            throw std::invalid_argument("restriction_map: assignment missing for " +
                                        src.generators()[i].name);
    if (!period_covered)
        throw std::invalid_argument("restriction_map: assignment missing for " +
                                    src.periodicity_name());
    return map;
}

GradedF2Map canonical_restriction(StabKind source, StabKind target,
                                  const std::vector<std::vector<bool>>& h1_images) {
    GradedF2Space src = GradedF2Space::table_for(source);
    GradedF2Space tgt = GradedF2Space::table_for(target);
    GradedF2Map map(src, tgt);

    // positive degree-1 generators of the source, in table order
    std::vector<int> deg1;
    for (int gi = 1; gi < static_cast<int>(src.generators().size()); ++gi)
        if (src.generators()[gi].degree == 1) deg1.push_back(gi);
    if (h1_images.size() != deg1.size())
        throw std::invalid_argument("canonical_restriction: expected " +
                                    std::to_string(deg1.size()) + " degree-1 images");

    std::vector<GradedClass> images(src.generators().size());
    for (size_t i = 0; i < deg1.size(); ++i) {
        images[deg1[i]] = degree_one_class(tgt, h1_images[i]);
        map.assign_generator(src.generators()[deg1[i]].name, images[deg1[i]]);
    }

    if (source == StabKind::Q8) {
        // x2 = x1^2, y2 = x1 y1, x3 = x1^2 y1 in the source force the
        // higher-degree images multiplicatively
        const GradedClass& x1 = images[1];
        const GradedClass& y1 = images[2];
        GradedClass x2 = multiply(tgt, x1, x1);
        GradedClass y2 = multiply(tgt, x1, y1);
        GradedClass x3 = multiply(tgt, x2, y1);
        map.assign_generator("x2", x2);
        map.assign_generator("y2", y2);
        map.assign_generator("x3", x3);
    }
    if (source == StabKind::Te24) {
        GradedClass b3 = zero_class(3);
        if (target == StabKind::Q8) {
            // split injection onto the 2-Sylow subgroup: b3 lands on the
            // unique degree-3 generator
            b3.terms.push_back({0, GradedF2Space::table_for(StabKind::Q8).generator_index("x3")});
        }
        map.assign_generator("b3", b3);
    }

    // periodicity: t1 -> t1 along Center/Z6 legs, e2 -> t1^2, e4 -> e2^2 or
    // t1^4 according to the target period
    GradedClass pimg = zero_class(src.period());
    pimg.terms.push_back({src.period() / tgt.period(), 0});
    if (src.period() % tgt.period() != 0)
        throw std::invalid_argument("canonical_restriction: incompatible periods");
    map.assign_periodicity(pimg);
    return map;
}

}  // namespace bianchi
