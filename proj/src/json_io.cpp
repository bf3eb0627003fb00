#include <coorbitsym/errors.hpp>
#include <coorbitsym/json_io.hpp>

#include <fstream>
#include <sstream>

namespace coorbitsym {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return parse_rational(os.str());
  }
  throw ParseError(where + ": expected a rational string or number");
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

RationalVector rational_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  RationalVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer() || v.get<long>() < 0) throw ParseError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

RationalMatrix entries_matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw ParseError(where + ": expected a non-empty array of rows");
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw ParseError(where + ": ragged rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(rows[i][k], where);
  }
  return m;
}

}  // namespace

ShearletGroupSpec group_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("group spec must be a JSON object");
  const std::string kind = require(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";

  RationalVector scaling;
  if (j.contains("scaling")) scaling = rational_array(j.at("scaling"), "scaling");

  ShearletGroupSpec spec;
  if (kind == "standard") {
    if (!scaling.empty()) {
      if (scaling.size() < 2) throw ParseError("'scaling' needs at least two entries");
      spec = make_standard_group(std::span<const Rational>(scaling).subspan(1));
      spec.scaling = scaling;
    } else {
      const RationalVector lambdas = rational_array(require(j, "lambdas"), "lambdas");
      if (lambdas.empty()) throw ParseError("'lambdas' must not be empty");
      spec = make_standard_group(lambdas);
    }
  } else if (kind == "toeplitz") {
    const std::size_t d = size_field(j, "d");
    if (d < 2) throw ParseError("'d' must be at least 2");
    spec = make_toeplitz_group(rational_from_json(require(j, "delta"), "delta"), d);
    if (!scaling.empty()) spec.scaling = scaling;
  } else if (kind == "custom") {
    const json& basis = require(j, "basis");
    if (!basis.is_array()) throw ParseError("'basis' must be an array of matrices");
    spec.kind = GroupKind::custom;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const json& b = basis[i];
      spec.basis.push_back(b.is_object() ? matrix_from_json(b) : entries_matrix(b, "basis[" + std::to_string(i) + "]"));
    }
    if (scaling.empty()) {
      scaling.push_back(1);
      for (const auto& l : rational_array(require(j, "lambdas"), "lambdas")) scaling.push_back(l);
    }
    spec.scaling = scaling;
    spec.d = j.contains("d") ? size_field(j, "d") : spec.basis.size() + 1;
    if (j.contains("delta")) spec.delta = rational_from_json(j.at("delta"), "delta");
  } else {
    throw ParseError("'kind' must be one of standard, toeplitz, custom");
  }
  if (kind != "custom" && j.contains("d") && size_field(j, "d") != spec.d)
    throw ParseError("'d' does not match the number of exponents");
  return spec;
}

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const RationalMatrix m = entries_matrix(require(j, "entries"), "entries");
  if (j.contains("rows") && size_field(j, "rows") != m.rows()) throw ParseError("'rows' does not match 'entries'");
  if (j.contains("cols") && size_field(j, "cols") != m.cols()) throw ParseError("'cols' does not match 'entries'");
  return m;
}

json to_json(const ShearletGroupSpec& spec) {
  json out{{"d", spec.d}, {"kind", to_string(spec.kind)}};
  out["lambdas"] = to_json(RationalVector(spec.lambdas().begin(), spec.lambdas().end()));
  if (spec.scaling.empty() || spec.scaling[0] != 1) out["scaling"] = to_json(spec.scaling);
  if (spec.delta) out["delta"] = to_string(*spec.delta);
  json basis = json::array();
  for (const auto& b : spec.basis) basis.push_back(to_json(b)["entries"]);
  out["basis"] = basis;
  return out;
}

json to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return json{{"valid", report.ok()}, {"checks", checks}};
}

json to_json(const Factorization& f) {
  return json{{"lambda", to_string(f.lambda)}, {"shear_t", to_json(f.shear_t)}, {"h", to_json(f.h)},
              {"A1", to_json(f.a1)}, {"A1_B", to_json(f.a1_b)}};
}

json to_json(const CompatibilityVerdict& v) {
  json out{{"compatible", v.compatible}, {"failed_condition", to_string(v.failed_condition)}};
  if (!v.message.empty()) out["message"] = v.message;
  if (v.factorization) out["factorization"] = to_json(*v.factorization);
  if (v.normalizer_witness) {
    out["witness"] = json{{"basis_index", v.normalizer_witness->index + 2},
                          {"lhs", to_json(v.normalizer_witness->lhs)},
                          {"rhs", to_json(v.normalizer_witness->rhs)}};
  }
  if (v.commutation_witness) {
    out["witness"] = json{{"row", v.commutation_witness->first + 2}, {"col", v.commutation_witness->second + 2}};
  }
  return out;
}

json to_json(const SymmetryGroupReport& r) {
  json blocks = json::array();
  for (const auto& b : r.commutant_blocks) {
    json idx = json::array();
    for (auto i : b.indices) idx.push_back(i + 2);
    blocks.push_back(json{{"lambda", to_string(b.lambda)}, {"indices", idx}, {"size", b.indices.size()}});
  }
  json gens = json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  return json{{"d", r.d},
              {"dim_total", r.dim_total},
              {"dim_B_component", r.dim_B_component},
              {"derivation_dim", r.derivation_dim},
              {"dimension_label", r.dimension_label},
              {"bounds", json{{"lower", r.lower_bound}, {"upper", r.upper_bound}, {"hold", r.bounds_hold}}},
              {"commutant_blocks", blocks},
              {"generators", gens},
              {"notes", r.notes}};
}

OracleConfig oracle_config_from_json(const json& j, OracleConfig c) {
  if (!j.is_object()) throw ParseError("oracle config must be a JSON object");
  try {
    if (j.contains("step")) c.step = j.at("step").get<double>();
    if (j.contains("radius")) c.radius = j.at("radius").get<int>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("net_resolution")) c.net_resolution = j.at("net_resolution").get<int>();
    if (j.contains("growth_threshold")) c.growth_threshold = j.at("growth_threshold").get<double>();
    if (j.contains("ladder")) c.ladder = j.at("ladder").get<std::vector<int>>();
    if (j.contains("max_centers")) c.max_centers = j.at("max_centers").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("oracle config: ") + e.what());
  }
  return c;
}

json to_json(const OracleConfig& c) {
  return json{{"step", c.step},         {"radius", c.radius},
              {"samples", c.samples},   {"seed", c.seed},
              {"net_resolution", c.net_resolution}, {"growth_threshold", c.growth_threshold},
              {"ladder", c.scales()},   {"max_centers", c.max_centers}};
}

json to_json(const DistortionReport& r) {
  json scales = json::array();
  for (const auto& s : r.per_scale) {
    scales.push_back(json{{"R", s.R}, {"max_ratio", s.max_ratio}, {"L", s.L}, {"C", s.C},
                          {"pairs", s.pairs}, {"capped_pairs", s.capped_pairs}});
  }
  return json{{"scales", scales}, {"flag", r.monotone_growth_flag}, {"config", to_json(r.config)}};
}

json to_json(const WeakEquivalenceCounts& c) {
  return json{{"N_QP", c.N_QP}, {"N_PQ", c.N_PQ}, {"centers", c.centers}, {"truncated", c.truncated}};
}

}  // namespace coorbitsym
