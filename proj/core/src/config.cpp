#include "bianchi/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bianchi {

void RunConfig::validate() const {
    if (q_max < 5)
        throw std::invalid_argument("config: q_max must be at least 5 (two periods)");
    if (format != "json" && format != "markdown")
        throw std::invalid_argument("config: format must be json or markdown");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::vector<bool>> parse_bit_rows(const std::string& rows) {
    std::vector<std::vector<bool>> out;
    std::istringstream is(rows);
    std::string row;
    while (std::getline(is, row, ';')) {
        std::vector<bool> bits;
        for (char c : row) {
            if (c == '0')
                bits.push_back(false);
            else if (c == '1')
                bits.push_back(true);
            else
                throw std::invalid_argument("config: override bits must be 0/1");
        }
        out.push_back(std::move(bits));
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, RunConfig cfg) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "override") {
            std::string which, edge, bits;
            int slot = -1;
            ls >> which >> edge >> slot >> bits;
            if (ls.fail() || (which != "gamma0" && which != "sl2"))
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected 'override <gamma0|sl2> <edge> <slot> <bits>'");
            RestrictionOverride o{edge, slot, parse_bit_rows(bits)};
            (which == "gamma0" ? cfg.gamma0_overrides : cfg.sl2_overrides).push_back(std::move(o));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "q_max")
            cfg.q_max = std::stoi(value);
        else if (key == "stage")
            cfg.stage = value;
        else if (key == "format")
            cfg.format = value;
        else if (key == "out")
            cfg.out_path = value;
        else if (key == "golden")
            cfg.golden_path = value;
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

GoldenValues GoldenValues::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("golden: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

GoldenValues GoldenValues::from_json(const nlohmann::json& entries) {
    GoldenValues g;
    for (const auto& e : entries) {
        std::string key = e.at("key").get<std::string>();
        g.values_[key] = e.at("value");
        g.labels_[key] = e.value("label", "");
        g.order_.push_back(key);
    }
    return g;
}

const nlohmann::json& GoldenValues::at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::invalid_argument("golden: missing key " + key);
    return it->second;
}

bool GoldenValues::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& GoldenValues::label(const std::string& key) const {
    static const std::string empty;
    auto it = labels_.find(key);
    return it == labels_.end() ? empty : it->second;
}

GoldenValues GoldenValues::with_value(const std::string& key, const nlohmann::json& v) const {
    GoldenValues g = *this;
    if (!g.values_.count(key)) throw std::invalid_argument("golden: missing key " + key);
    g.values_[key] = v;
    return g;
}

}  // namespace bianchi
