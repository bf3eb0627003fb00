#include <coorbitsym/errors.hpp>
#include <coorbitsym/shearlet_group.hpp>

#include <cmath>
#include <sstream>

namespace coorbitsym {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::standard: return "standard";
    case GroupKind::toeplitz: return "toeplitz";
    case GroupKind::custom: return "custom";
  }
  return "custom";
}

ShearletGroupSpec make_standard_group(std::span<const Rational> lambdas) {
  ShearletGroupSpec spec;
  spec.d = lambdas.size() + 1;
  spec.kind = GroupKind::standard;
  spec.scaling.push_back(1);
  spec.scaling.insert(spec.scaling.end(), lambdas.begin(), lambdas.end());
  for (std::size_t i = 1; i < spec.d; ++i) spec.basis.push_back(RationalMatrix::unit(spec.d, spec.d, 0, i));
  return spec;
}

ShearletGroupSpec make_standard_group(std::initializer_list<Rational> lambdas) {
  return make_standard_group(std::span<const Rational>(lambdas.begin(), lambdas.size()));
}

ShearletGroupSpec make_toeplitz_group(const Rational& delta, std::size_t d) {
  if (d < 2) throw SpecError("Toeplitz group needs d >= 2");
  ShearletGroupSpec spec;
  spec.d = d;
  spec.kind = GroupKind::toeplitz;
  spec.delta = delta;
  RationalMatrix shift(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) shift(i, i + 1) = 1;
  RationalMatrix power = shift;
  for (std::size_t j = 1; j < d; ++j) {
    spec.basis.push_back(power);
    power = power * shift;
  }
  for (std::size_t j = 0; j < d; ++j) spec.scaling.push_back(1 - Rational(static_cast<long>(j)) * delta);
  return spec;
}

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : checks) {
    if (c.passed) continue;
    os << (first ? "" : "; ") << c.name << ": " << c.detail;
    first = false;
  }
  return first ? "all checks passed" : os.str();
}

namespace {

std::string index_name(std::size_t i) { return "X_" + std::to_string(i + 2); }

}  // namespace

ValidationReport validate_spec(const ShearletGroupSpec& spec) {
  ValidationReport report;
  const std::size_t d = spec.d;

  ValidationCheck shape{"shape", true, ""};
  if (d < 2) {
    shape = {"shape", false, "d must be at least 2, got " + std::to_string(d)};
  } else if (spec.basis.size() != d - 1) {
    shape = {"shape", false,
             "expected " + std::to_string(d - 1) + " basis matrices, got " + std::to_string(spec.basis.size())};
  } else if (spec.scaling.size() != d) {
    shape = {"shape", false,
             "expected " + std::to_string(d - 1) + " scaling exponents, got " +
                 std::to_string(spec.scaling.empty() ? 0 : spec.scaling.size() - 1)};
  } else {
    for (std::size_t i = 0; i < spec.basis.size(); ++i) {
      if (spec.basis[i].rows() != d || spec.basis[i].cols() != d) {
        shape = {"shape", false, index_name(i) + " is not " + std::to_string(d) + "x" + std::to_string(d)};
        break;
      }
    }
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  ValidationCheck normalized{"scaling_normalized", true, ""};
  if (spec.scaling[0] != 1) {
    normalized.passed = false;
    normalized.detail = "Y must be normalized to diag(1, lambda_2, ...); first entry is " + to_string(spec.scaling[0]);
  }
  report.checks.push_back(normalized);

  ValidationCheck canonical{"canonical_basis", true, ""};
  for (std::size_t i = 0; i < d - 1 && canonical.passed; ++i) {
    const auto& x = spec.basis[i];
    if (!x.is_strictly_upper_triangular()) {
      canonical = {"canonical_basis", false, index_name(i) + " is not strictly upper triangular"};
      break;
    }
    for (std::size_t j = 0; j < d; ++j) {
      const Rational expected = (j == i + 1) ? 1 : 0;
      if (x(0, j) != expected) {
        canonical = {"canonical_basis", false,
                     index_name(i) + "^T e_1 != e_" + std::to_string(i + 2) + " (first row " +
                         to_string(x.block(0, 0, 1, d)) + ")"};
        break;
      }
    }
  }
  report.checks.push_back(canonical);

  const std::span<const RationalMatrix> basis(spec.basis);

  ValidationCheck closure{"closure", true, ""};
  ValidationCheck commutative{"commutativity", true, ""};
  ValidationCheck filtration{"filtration", true, ""};
  for (std::size_t i = 0; i < d - 1; ++i) {
    for (std::size_t j = 0; j < d - 1; ++j) {
      const RationalMatrix product = spec.basis[i] * spec.basis[j];
      if (commutative.passed && product != spec.basis[j] * spec.basis[i]) {
        commutative = {"commutativity", false, index_name(i) + " and " + index_name(j) + " do not commute"};
      }
      const auto coords = span_coordinates(basis, product);
      if (!coords) {
        if (closure.passed) {
          closure = {"closure", false,
                     index_name(i) + "*" + index_name(j) + " = " + to_string(product) + " is not in s"};
        }
        continue;
      }
      // s_k s_l lies in s_{k+l-1}; with zero-based indices i, j the product
      // may only involve X_m for m >= i + j + 1 (zero-based).
      for (std::size_t m = 0; m < d - 1 && filtration.passed; ++m) {
        if (m < i + j + 1 && (*coords)[m] != 0) {
          filtration = {"filtration", false,
                        index_name(i) + "*" + index_name(j) + " has coefficient " + to_string((*coords)[m]) +
                            " on " + index_name(m)};
        }
      }
    }
  }
  report.checks.push_back(closure);
  report.checks.push_back(commutative);
  report.checks.push_back(filtration);

  ValidationCheck compatible{"scaling_compatibility", true, ""};
  const RationalMatrix y = spec.scaling_generator();
  for (std::size_t i = 0; i < d - 1; ++i) {
    const RationalMatrix bracket = commutator(y, spec.basis[i]);
    if (!span_coordinates(basis, bracket)) {
      compatible = {"scaling_compatibility", false,
                    "[Y, " + index_name(i) + "] = " + to_string(bracket) + " is not in s"};
      break;
    }
  }
  report.checks.push_back(compatible);
  return report;
}

ShearletGroup::ShearletGroup(ShearletGroupSpec spec) : spec_(std::move(spec)) {
  const auto report = validate_spec(spec_);
  if (!report.ok()) throw SpecError("invalid shearlet group: " + report.summary());

  const std::size_t n = shear_dim();
  for (std::size_t i = 0; i < n; ++i) c_basis_.push_back(spec_.basis[i].block(1, 1, n, n));
  structure_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) structure_.push_back(*algebra_coordinates(spec_.basis[i] * spec_.basis[j]));

  for (const auto& l : lambdas()) {
    lambdas_f_.push_back(to_double(l));
    ad_scaling_.push_back(1.0 - to_double(l));
  }
  auto to_eigen = [](const RationalMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    basis_f_.push_back(to_eigen(spec_.basis[i]));
    c_basis_f_.push_back(to_eigen(c_basis_[i]));
  }
}

RationalMatrix ShearletGroup::c_of(std::span<const Rational> t) const {
  if (t.size() != shear_dim()) throw DimensionError("shear coordinate vector has wrong length");
  RationalMatrix c(shear_dim(), shear_dim());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) c += t[i] * c_basis_[i];
  return c;
}

RationalMatrix ShearletGroup::algebra_element(std::span<const Rational> t) const {
  if (t.size() != shear_dim()) throw DimensionError("shear coordinate vector has wrong length");
  RationalMatrix x(d(), d());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) x += t[i] * spec_.basis[i];
  return x;
}

std::optional<RationalVector> ShearletGroup::algebra_coordinates(const RationalMatrix& m) const {
  if (m.rows() != d() || m.cols() != d()) throw DimensionError("matrix does not match the group dimension");
  // The canonical basis is read off the first row.
  RationalVector coords(m.row(0).begin() + 1, m.row(0).end());
  if (m(0, 0) != 0 || algebra_element(coords) != m) return std::nullopt;
  return coords;
}

Eigen::MatrixXd ShearletGroup::algebra_element_f(std::span<const double> t) const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d(), d());
  for (std::size_t i = 0; i < t.size(); ++i) x += t[i] * basis_f_[i];
  return x;
}

Eigen::MatrixXd ShearletGroup::c_of_f(std::span<const double> t) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(shear_dim(), shear_dim());
  for (std::size_t i = 0; i < t.size(); ++i) c += t[i] * c_basis_f_[i];
  return c;
}

ShearMatrixForm shear_from_t(const ShearletGroup& group, std::span<const Rational> t) {
  ShearMatrixForm form;
  form.matrix = RationalMatrix::identity(group.d()) + group.algebra_element(t);
  form.c_block = group.c_of(t);
  return form;
}

namespace {

// Coordinates of h(0,a) h(0,b): a + b + C(a)^T b.
template <class Scalar, class CFn>
std::vector<Scalar> shear_product(std::span<const Scalar> a, std::span<const Scalar> b, CFn&& c_entry) {
  const std::size_t n = a.size();
  std::vector<Scalar> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = a[j] + b[j];
    for (std::size_t k = 0; k < n; ++k) out[j] += c_entry(k, j) * b[k];
  }
  return out;
}

void check_lengths(const ShearletGroup& group, std::size_t a, std::size_t b) {
  if (a != group.shear_dim() || b != group.shear_dim())
    throw DimensionError("shear coordinate vector has wrong length");
}

}  // namespace

ExactGroupElement group_mul_coords(const ShearletGroup& group, const ExactGroupElement& a,
                                   const ExactGroupElement& b) {
  check_lengths(group, a.t.size(), b.t.size());
  bool trivial_scaling = true;
  for (const auto& l : group.lambdas()) trivial_scaling = trivial_scaling && l == 1;
  if (b.r != 0 && !trivial_scaling) {
    throw ExactnessError("exact product needs e^r for r = " + to_string(b.r) + "; use floating-point coordinates");
  }
  const RationalMatrix ca = group.c_of(a.t);
  ExactGroupElement out;
  out.sign = a.sign * b.sign;
  out.r = a.r + b.r;
  out.t = shear_product<Rational>(a.t, b.t, [&](std::size_t k, std::size_t j) { return ca(k, j); });
  return out;
}

GroupElementCoords group_mul_coords(const ShearletGroup& group, const GroupElementCoords& a,
                                    const GroupElementCoords& b) {
  check_lengths(group, a.t.size(), b.t.size());
  // h(r1,t1) h(r2,t2) = h(r1 + r2, 0) [h(r2,0)^{-1} h(0,t1) h(r2,0)] h(0,t2).
  const std::vector<double> moved = conjugate_shear_by_scaling(group, b.r, a.t);
  const Eigen::MatrixXd ca = group.c_of_f(moved);
  GroupElementCoords out;
  out.sign = a.sign * b.sign;
  out.r = a.r + b.r;
  out.t = shear_product<double>(moved, b.t, [&](std::size_t k, std::size_t j) { return ca(k, j); });
  return out;
}

GroupElementCoords group_inverse(const ShearletGroup& group, const GroupElementCoords& a) {
  const std::size_t n = group.shear_dim();
  // (I + X(t))^{-1} = I + X(t') with t' read off the first row.
  const Eigen::MatrixXd x = group.algebra_element_f(a.t);
  const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(group.d(), group.d()) + x).inverse();
  std::vector<double> t_inv(n);
  for (std::size_t j = 0; j < n; ++j) t_inv[j] = inv(0, j + 1);
  GroupElementCoords out;
  out.sign = a.sign;
  out.r = -a.r;
  out.t = conjugate_shear_by_scaling(group, -a.r, t_inv);
  return out;
}

std::vector<double> conjugate_shear_by_scaling(const ShearletGroup& group, double r, std::span<const double> t) {
  if (t.size() != group.shear_dim()) throw DimensionError("shear coordinate vector has wrong length");
  std::vector<double> out(t.begin(), t.end());
  if (r == 0.0) return out;
  const auto mu = group.ad_scaling();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::exp(r * mu[j]);
  return out;
}

std::vector<double> orbit_map(const ShearletGroup& group, const GroupElementCoords& h) {
  if (h.t.size() != group.shear_dim()) throw DimensionError("shear coordinate vector has wrong length");
  const auto lambdas = group.lambdas_f();
  std::vector<double> xi(group.d());
  xi[0] = std::exp(h.r);
  for (std::size_t j = 0; j < h.t.size(); ++j) xi[j + 1] = std::exp(lambdas[j] * h.r) * h.t[j];
  // (-h)^{-T} xi_0 = -(h^{-T} xi_0).
  if (h.sign < 0)
    for (auto& x : xi) x = -x;
  return xi;
}

GroupElementCoords orbit_map_inverse(const ShearletGroup& group, std::span<const double> xi) {
  if (xi.size() != group.d()) throw DimensionError("orbit point has wrong length");
  if (xi[0] == 0.0 || !std::isfinite(xi[0])) throw OrbitError("point lies outside the dual orbit (xi_1 = 0)");
  const auto lambdas = group.lambdas_f();
  GroupElementCoords h;
  h.sign = xi[0] > 0 ? 1 : -1;
  const double a = std::abs(xi[0]);
  h.r = std::log(a);
  h.t.resize(group.shear_dim());
  for (std::size_t j = 0; j < h.t.size(); ++j) h.t[j] = h.sign * xi[j + 1] * std::pow(a, -lambdas[j]);
  return h;
}

Eigen::MatrixXd element_matrix(const ShearletGroup& group, const GroupElementCoords& h) {
  const std::size_t d = group.d();
  Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(d, d) + group.algebra_element_f(h.t);
  Eigen::VectorXd scale(d);
  scale(0) = std::exp(-h.r);
  for (std::size_t j = 1; j < d; ++j) scale(j) = std::exp(-h.r * group.lambdas_f()[j - 1]);
  return static_cast<double>(h.sign) * scale.asDiagonal() * shear.inverse();
}

std::vector<double> shear_log_coords(const ShearletGroup& group, std::span<const double> t) {
  const std::size_t d = group.d();
  const Eigen::MatrixXd x = group.algebra_element_f(t);
  Eigen::MatrixXd power = x;
  Eigen::MatrixXd log = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 1; k < d; ++k) {
    log += ((k % 2) ? 1.0 : -1.0) / static_cast<double>(k) * power;
    power = power * x;
  }
  std::vector<double> u(d - 1);
  for (std::size_t j = 0; j + 1 < d; ++j) u[j] = log(0, j + 1);
  return u;
}

std::vector<double> shear_from_log_coords(const ShearletGroup& group, std::span<const double> u) {
  const std::size_t d = group.d();
  const Eigen::MatrixXd x = group.algebra_element_f(u);
  Eigen::MatrixXd term = x;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 1; k < d; ++k) {
    sum += term;
    term = term * x / static_cast<double>(k + 1);
  }
  std::vector<double> t(d - 1);
  for (std::size_t j = 0; j + 1 < d; ++j) t[j] = sum(0, j + 1);
  return t;
}

}  // namespace coorbitsym
