#pragma once

#include "bianchi/spectral.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace bianchi {

struct RunConfig {
    int q_max = 9;
    std::string stage = "all";
    std::string format = "json";  // json | markdown
    std::string out_path;         // empty = stdout
    std::string golden_path = "data/golden_values.json";
    std::vector<RestrictionOverride> gamma0_overrides;
    std::vector<RestrictionOverride> sl2_overrides;

    void validate() const;  // throws std::invalid_argument on bad values
};

// Plain-text config: `key = value` lines, '#' comments, and restriction
// override lines of the form
//   override <gamma0|sl2> <edge> <slot> <rows>
// where <rows> lists the degree-1 image bits row by row, e.g. "1;0".
RunConfig parse_config_file(const std::string& path, RunConfig base = {});
RunConfig parse_config_text(const std::string& text, RunConfig base = {});

class GoldenValues {
  public:
    static GoldenValues load(const std::string& path);
    static GoldenValues from_json(const nlohmann::json& entries);

    const nlohmann::json& at(const std::string& key) const;
    bool has(const std::string& key) const;
    std::vector<std::string> keys() const { return order_; }
    const std::string& label(const std::string& key) const;

    // returns a copy with one entry replaced (negative-control harness)
    GoldenValues with_value(const std::string& key, const nlohmann::json& v) const;

  private:
    std::map<std::string, nlohmann::json> values_;
    std::map<std::string, std::string> labels_;
    std::vector<std::string> order_;
};

}  // namespace bianchi
