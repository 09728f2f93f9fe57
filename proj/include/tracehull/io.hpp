#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "tracehull/certify.hpp"
#include "tracehull/oracle.hpp"
#include "tracehull/poly.hpp"
#include "tracehull/region.hpp"
#include "tracehull/threshold.hpp"

namespace tracehull::io {

using nlohmann::json;

// Exact string form: terminating decimal when one exists, otherwise "p/q".
std::string rational_string(const Rational& q);

// {"terms":[{"dx":..,"dy":..,"coeff":"decimal"},...]}; unknown fields rejected.
json poly_to_json(const Poly2& p);
Poly2 poly_from_json(const json& j);

// {"box":[[lo,hi],[lo,hi]],"constraint":{"form":...,"dir":...,"bound":"..."}}
// or {"constraint":null}.
json region_to_json(const Region& r);
Region region_from_json(const json& j);

// Inline syntax: "sum>=-2.47", "product<=-0.67"; bounds accept decimals or
// "p/q" fractions.
Region region_from_inline(const std::string& s);

struct AtomsData {
    bool symmetric = false;
    std::vector<std::pair<Rational, Rational>> xy;
    std::vector<SymmetricAtom> sym;
    size_t size() const { return symmetric ? sym.size() : xy.size(); }
};
json atoms_to_json(const AtomsData& a);
AtomsData atoms_from_json(const json& j);

json weights_to_json(const std::vector<Rational>& w);
std::vector<Rational> weights_from_json(const json& j);

json to_json(const MinResult& m);
json to_json(const BoundResult& b);
json to_json(const HyperplaneReport& r);
json to_json(const MeasureReport<Rational>& r);
json to_json(const MeasureReport<BigReal>& r);
json to_json(const IdentityReport& r);
json to_json(const WitnessMeasure& w);
json to_json(const ThresholdResult& r);
json to_json(const std::vector<oracle::OracleReport>& reports);

std::string verdict_from_json_roundtrip(const json& j);  // verdict field accessor

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace tracehull::io
