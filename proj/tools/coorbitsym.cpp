// coorbitsym: decide coorbit compatibility of dilations for shearlet groups.
//
// Exit codes: 0 decided or all fixtures pass, 1 fixture mismatch,
// 2 input error, 3 math-domain error (singular matrix, orbit not preserved).

#include <coorbitsym/errors.hpp>
#include <coorbitsym/example_suite.hpp>
#include <coorbitsym/json_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace coorbitsym;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kDomain = 3 };

struct Options {
  std::string group_path;
  std::string matrix_path;
  std::string output_path;
  std::string config_path;
  bool pretty = false;
  bool weak_equivalence = false;
  OracleConfig oracle;
  std::vector<std::pair<CLI::Option*, std::function<void(OracleConfig&)>>> oracle_flags;
};

int fail(int code, const std::string& type, const std::string& message) {
  json err{{"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
  std::cerr << err.dump() << "\n";
  return code;
}

void emit(const json& out, const Options& opt) {
  const std::string text = opt.pretty ? out.dump(2) : out.dump();
  if (opt.output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(opt.output_path);
  if (!f) throw ParseError("cannot write " + opt.output_path);
  f << text << "\n";
}

Eigen::MatrixXd to_float(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

ShearletGroup load_group(const Options& opt) {
  return ShearletGroup(group_spec_from_json(read_json_file(opt.group_path)));
}

int cmd_validate(const Options& opt) {
  const ShearletGroupSpec spec = group_spec_from_json(read_json_file(opt.group_path));
  const ValidationReport report = validate_spec(spec);
  json out = to_json(report);
  out["group"] = to_json(spec);
  emit(out, opt);
  return report.ok() ? kOk : kInput;
}

int cmd_check(const Options& opt) {
  const ShearletGroup group = load_group(opt);
  const RationalMatrix a = matrix_from_json(read_json_file(opt.matrix_path));
  json out = to_json(is_coorbit_compatible(group, a));
  out["matrix"] = to_json(a);
  emit(out, opt);
  return kOk;
}

int cmd_symgroup(const Options& opt) {
  const ShearletGroup group = load_group(opt);
  json out = to_json(symmetry_group_report(group));
  out["group"] = to_json(group.spec());
  emit(out, opt);
  return kOk;
}

int cmd_oracle(Options opt) {
  if (!opt.config_path.empty()) {
    // Explicit flags win over the config file.
    OracleConfig merged = oracle_config_from_json(read_json_file(opt.config_path));
    for (const auto& [flag, apply] : opt.oracle_flags)
      if (flag->count() > 0) apply(merged);
    opt.oracle = merged;
  }
  opt.oracle.validate();
  const ShearletGroup group = load_group(opt);
  const RationalMatrix a = matrix_from_json(read_json_file(opt.matrix_path));
  if (a.rows() != group.d() || a.cols() != group.d()) throw DimensionError("matrix size does not match the group dimension");
  if (determinant(a) == 0) throw SingularMatrixError("matrix is singular");
  json out = to_json(distortion_scan(group, opt.oracle, to_float(a)));
  out["decider_compatible"] = is_coorbit_compatible(group, a).compatible;
  if (opt.weak_equivalence) out["weak_equivalence"] = to_json(weak_equivalence_count(group, opt.oracle, to_float(a)));
  emit(out, opt);
  return kOk;
}

int cmd_examples(const Options& opt) {
  const FixtureSuite suite = run_example_suite();
  json fixtures = json::array();
  json failed = json::array();
  for (const auto& f : suite.fixtures) {
    fixtures.push_back(json{{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}});
    if (!f.passed) failed.push_back(f.name);
  }
  emit(json{{"passed", suite.ok()}, {"fixtures", fixtures}, {"mismatched", failed}}, opt);
  return suite.ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coorbit compatibility of dilations for shearlet dilation groups"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--pretty", opt.pretty, "Indent the JSON output");
    sub->add_option("-o,--output", opt.output_path, "Write JSON here instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "Check a group spec");
  validate->add_option("--group", opt.group_path, "Group spec JSON")->required();
  add_common(validate);

  auto* check = app.add_subcommand("check", "Decide whether A is coorbit compatible");
  check->add_option("--group", opt.group_path, "Group spec JSON")->required();
  check->add_option("--matrix", opt.matrix_path, "Matrix JSON")->required();
  add_common(check);

  auto* symgroup = app.add_subcommand("symgroup", "Dimension and structure of the symmetry group");
  symgroup->add_option("--group", opt.group_path, "Group spec JSON")->required();
  add_common(symgroup);

  auto* oracle = app.add_subcommand("oracle", "Word-metric distortion of phi_A across scales");
  oracle->add_option("--group", opt.group_path, "Group spec JSON")->required();
  oracle->add_option("--matrix", opt.matrix_path, "Matrix JSON")->required();
  oracle->add_option("--config", opt.config_path, "Oracle config JSON (flags override it)");
  auto oracle_flag = [&](const char* name, auto OracleConfig::*field, const char* help) {
    CLI::Option* o = oracle->add_option(name, opt.oracle.*field, help);
    opt.oracle_flags.emplace_back(o, [&opt, field](OracleConfig& c) { c.*field = opt.oracle.*field; });
  };
  oracle_flag("--radius", &OracleConfig::radius, "Largest word-ball radius");
  oracle_flag("--step", &OracleConfig::step, "Half-width of the unit neighborhood");
  oracle_flag("--samples", &OracleConfig::samples, "Pairs per scale");
  oracle_flag("--seed", &OracleConfig::seed, "RNG seed");
  oracle_flag("--net-resolution", &OracleConfig::net_resolution, "Net points per axis");
  oracle_flag("--threshold", &OracleConfig::growth_threshold, "Relative growth that sets the flag");
  oracle_flag("--ladder", &OracleConfig::ladder, "Scales, default radius/2 3*radius/4 radius");
  oracle_flag("--max-centers", &OracleConfig::max_centers, "Cap on word-ball centers");
  oracle->add_flag("--weak-equivalence", opt.weak_equivalence, "Also count covering intersections");
  add_common(oracle);

  auto* examples = app.add_subcommand("paper-examples", "Run the built-in example fixtures");
  add_common(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kInput, "UsageError", e.what());
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*check) return cmd_check(opt);
    if (*symgroup) return cmd_symgroup(opt);
    if (*oracle) return cmd_oracle(opt);
    if (*examples) return cmd_examples(opt);
  } catch (const SingularMatrixError& e) {
    return fail(kDomain, "SingularMatrixError", e.what());
  } catch (const OrbitError& e) {
    return fail(kDomain, "OrbitError", e.what());
  } catch (const ParseError& e) {
    return fail(kInput, "ParseError", e.what());
  } catch (const SpecError& e) {
    return fail(kInput, "SpecError", e.what());
  } catch (const DimensionError& e) {
    return fail(kInput, "DimensionError", e.what());
  } catch (const ConfigError& e) {
    return fail(kInput, "ConfigError", e.what());
  } catch (const Error& e) {
    return fail(kInput, "Error", e.what());
  }
  return kInput;
}
