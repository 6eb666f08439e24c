#pragma once

#include <json.hpp>

#include "gpd/morita.hpp"

namespace gpd {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

// Algebra: { "field": {"char": int}, "quiver": {"vertices": int, "arrows":
// [{"name","src","tgt"}]}, "relations": [[{"coef": string, "path":
// ["arrowname",...]}]], "loewy_bound": int }. Paths are written in
// composition order: ["g3","g2"] applies g2 first. Coefficients are decimal
// strings ("2/3").
json algebra_to_json(const Algebra& a);
std::shared_ptr<const Algebra> algebra_from_json(const json& j);

// Module: { "algebra": <path or inline>, "dims": [int], "action":
// {"arrowname": [[entries]]} } or { "algebra": ..., "string": ["g3","g2"],
// "at": vertex }. Entries are numbers or strings.
json module_to_json(const Rep& m);
Rep module_from_json(const json& j, std::shared_ptr<const Algebra> alg);

// Complex: { "algebra": ..., "terms": {"-1": module, "0": module},
// "diffs": {"-1": [[per-vertex matrices]]} }.
json complex_to_json(const Complex& c);
Complex complex_from_json(const json& j, std::shared_ptr<const Algebra> alg);

// Ring: { "vars": ["t"], "relations": ["t^3"], "order": 4 }.
json ring_to_json(const ArtinAlgebra& r);
ArtinAlgebra ring_from_json(const json& j, const Field& f);

// Versal report: { "vars": int, "relations": [...], "order": int,
// "exact": bool, "universal_claimed": bool }.
json versal_to_json(const VersalPresentation& v);

// Bimodule: module JSON over the enveloping algebra plus {"left": algebra,
// "right": algebra}.
json bimodule_to_json(const Bimodule& b);
Bimodule bimodule_from_json(const json& j);

// Entity loading with "algebra"/"left"/"right" given inline or as a file
// path relative to the JSON file's directory.
std::shared_ptr<const Algebra> load_algebra_file(const std::string& path);
Rep load_module_file(const std::string& path);
Complex load_complex_file(const std::string& path);
Bimodule load_bimodule_file(const std::string& path);
ArtinAlgebra load_ring_file(const std::string& path, const Field& f);

}  // namespace gpd
