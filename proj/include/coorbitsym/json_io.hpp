#pragma once

#include <coorbitsym/covering_oracle.hpp>
#include <coorbitsym/symmetry.hpp>

#include <json.hpp>

#include <string>

namespace coorbitsym {

using nlohmann::json;

/// Throws ParseError on unreadable files or malformed JSON.
json read_json_file(const std::string& path);

/// {"kind": "standard", "lambdas": ["1/2"]},
/// {"kind": "toeplitz", "d": 4, "delta": "1/3"},
/// {"kind": "custom", "d": 3, "lambdas": [...], "basis": [matrix entries, ...]}.
/// An optional "scaling" array gives the full diagonal of Y instead of "lambdas".
/// Throws ParseError; structural problems are left to validate_spec.
ShearletGroupSpec group_spec_from_json(const json& j);
json to_json(const ShearletGroupSpec& spec);

/// {"rows": 2, "cols": 2, "entries": [["2", "5"], ["0", "3"]]}; numbers are accepted too.
RationalMatrix matrix_from_json(const json& j);
json to_json(const RationalMatrix& m);
json to_json(const RationalVector& v);

json to_json(const ValidationReport& report);
json to_json(const Factorization& f);
json to_json(const CompatibilityVerdict& verdict);
json to_json(const SymmetryGroupReport& report);

OracleConfig oracle_config_from_json(const json& j, OracleConfig base = {});
json to_json(const OracleConfig& config);
json to_json(const DistortionReport& report);
json to_json(const WeakEquivalenceCounts& counts);

}  // namespace coorbitsym
