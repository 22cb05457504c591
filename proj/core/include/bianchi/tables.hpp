#pragma once

#include "bianchi/f2.hpp"

#include <map>
#include <string>
#include <vector>

namespace bianchi {

// Stabilizer types occurring in the two cell complexes. Z6 only occurs as an
// edge stabilizer; its mod-2 cohomology coincides with the center's (the
// 2-Sylow restriction is an isomorphism). Trivial is for synthetic test
// complexes and carries no table.
enum class StabKind { Trivial, Center, Z4, Z6, Q8, Te24 };

std::string kind_name(StabKind k);

// Graded F2 cohomology of a finite stabilizer type, presented as a free
// module over a polynomial periodicity class on named generators:
//   Center: F2[t1],          generators {1}
//   Z6:     F2[t1],          generators {1}
//   Z4:     F2[e2](1, b1)
//   Q8:     F2[e4](1, x1, y1, x2, y2, x3)
//   Te24:   F2[e4](1, b3)
class GradedF2Space {
  public:
    struct Generator {
        std::string name;
        int degree;
    };

    static GradedF2Space table_for(StabKind kind);

    StabKind kind() const { return kind_; }
    int period() const { return period_degree_; }
    const std::string& periodicity_name() const { return period_name_; }
    const std::vector<Generator>& generators() const { return gens_; }

    int dim(int q) const;
    // Basis at degree q: pairs (power of periodicity class, generator index),
    // ordered by generator index.
    std::vector<std::pair<int, int>> basis(int q) const;
    std::vector<std::string> basis_names(int q) const;
    std::string class_name(int power, int gen) const;

    int generator_index(const std::string& name) const;  // -1 if absent

  private:
    StabKind kind_ = StabKind::Center;
    std::vector<Generator> gens_;
    std::string period_name_;
    int period_degree_ = 1;
};

// A class of homogeneous degree inside a table: F2 combination of basis slots.
struct GradedClass {
    int degree = 0;
    std::vector<std::pair<int, int>> terms;  // (periodicity power, generator index)
};

GradedClass zero_class(int degree);

// Product of two homogeneous classes inside one table, using the fixed
// relations of each type (b1^2 = 0 in Z4; x^2+xy+y^2 = 0, x^2y+xy^2 = 0 in
// Q8; b3^2 = 0 in Te24).
GradedClass multiply(const GradedF2Space& table, const GradedClass& lhs, const GradedClass& rhs);

// Degree-wise map between two tables generated by the images of the source's
// positive module generators and of its periodicity class, extended
// multiplicatively (generator products in the source map to the products of
// the images in the target ring).
class GradedF2Map {
  public:
    GradedF2Map() = default;
    GradedF2Map(GradedF2Space source, GradedF2Space target);

    // image expressed in target basis coordinates at the generator's degree
    void assign_generator(const std::string& source_gen, const GradedClass& image);
    void assign_periodicity(const GradedClass& image);

    const GradedF2Space& source() const { return source_; }
    const GradedF2Space& target() const { return target_; }

    // target.dim(q) x source.dim(q) matrix
    F2Matrix matrix(int q) const;

    // Periodicity compatibility as a matrix identity over the degree window.
    bool commutes_with_periodicity(int q_max) const;

  private:
    GradedClass image_of_basis(int power, int gen) const;

    GradedF2Space source_, target_;
    std::map<int, GradedClass> gen_images_;
    GradedClass period_image_;
    bool period_assigned_ = false;
};

// Canonical restriction maps between stabilizer types. `h1_images` gives, per
// positive degree-1 generator of the source, the image coordinates in the
// target's degree-1 basis; Te24 -> Q8 carries b3 to the degree-3 generator,
// all other Te24 restrictions kill b3. Periodicity images are forced:
// e4 -> e2^2 -> t1^4 down the chain.
GradedF2Map canonical_restriction(StabKind source, StabKind target,
                                  const std::vector<std::vector<bool>>& h1_images);

// Parse "0" or a '+'-separated sum of basis class names of the given degree,
// e.g. "e2^2" or "x2+y2". Unknown names raise std::invalid_argument.
GradedClass parse_class(const GradedF2Space& table, int degree, const std::string& text);

// Assignment-driven form: one entry per positive module generator of the
// source plus one for its periodicity class, images written in the target's
// class names.
GradedF2Map restriction_map(StabKind source, StabKind target,
                            const std::vector<std::pair<std::string, std::string>>& assignment);

}  // namespace bianchi
