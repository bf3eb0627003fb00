#pragma once

#include <coorbitsym/rational_matrix.hpp>

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coorbitsym {

enum class GroupKind { standard, toeplitz, custom };

std::string to_string(GroupKind kind);

/// Raw description of a generalized shearlet dilation group H = DS u -DS.
///
/// `basis` holds the canonical basis X_2..X_d of the shearing algebra s
/// (index 0 is X_2). `scaling` is the diagonal of the scaling generator
/// Y = diag(1, lambda_2, ..., lambda_d); it is stored in full so that specs
/// with a non-normalized first entry can be reported by validation.
struct ShearletGroupSpec {
  std::size_t d = 2;
  GroupKind kind = GroupKind::custom;
  std::vector<RationalMatrix> basis;
  RationalVector scaling;
  std::optional<Rational> delta;

  /// lambda_2..lambda_d.
  std::span<const Rational> lambdas() const { return std::span<const Rational>(scaling).subspan(1); }
  RationalMatrix scaling_generator() const { return RationalMatrix::diagonal(scaling); }
};

/// X_i = e_1 e_i^T, Y = diag(1, lambdas...). d = lambdas.size() + 1.
ShearletGroupSpec make_standard_group(std::span<const Rational> lambdas);
ShearletGroupSpec make_standard_group(std::initializer_list<Rational> lambdas);

/// X_2 = upper shift, X_j = X_2^(j-1), Y = diag(1, 1-delta, ..., 1-(d-1)delta).
ShearletGroupSpec make_toeplitz_group(const Rational& delta, std::size_t d);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  std::string summary() const;
};

/// Runs every structural check on a spec. Failures are reported with a
/// witness in `detail`; nothing is thrown.
ValidationReport validate_spec(const ShearletGroupSpec& spec);

/// h = sign * h(r, t) with h(r, t) = exp(-rY) (I_d + sum_j t_j X_j)^{-1}.
template <class Scalar>
struct BasicGroupElement {
  int sign = 1;
  Scalar r{};
  std::vector<Scalar> t;

  friend bool operator==(const BasicGroupElement&, const BasicGroupElement&) = default;
};

using GroupElementCoords = BasicGroupElement<double>;
using ExactGroupElement = BasicGroupElement<Rational>;

/// I_d + sum t_i X_i together with C(t), its lower-right (d-1)x(d-1) block minus identity.
struct ShearMatrixForm {
  RationalMatrix matrix;
  RationalMatrix c_block;
};

/// A validated shearlet dilation group with precomputed exact and
/// floating-point data. Immutable after construction.
class ShearletGroup {
 public:
  /// Throws SpecError carrying the validation summary if any check fails.
  explicit ShearletGroup(ShearletGroupSpec spec);

  const ShearletGroupSpec& spec() const { return spec_; }
  std::size_t d() const { return spec_.d; }
  std::size_t shear_dim() const { return spec_.d - 1; }
  std::span<const Rational> lambdas() const { return spec_.lambdas(); }

  /// C(e_i) for the canonical coordinate vector e_i (index 0 is i = 2).
  const RationalMatrix& c_basis(std::size_t i) const { return c_basis_[i]; }
  RationalMatrix c_of(std::span<const Rational> t) const;

  /// Coordinates of X_i X_j in the canonical basis.
  const RationalVector& structure_constants(std::size_t i, std::size_t j) const {
    return structure_[i * shear_dim() + j];
  }

  /// Canonical coordinates of m if m lies in s.
  std::optional<RationalVector> algebra_coordinates(const RationalMatrix& m) const;

  /// sum_j t_j X_j.
  RationalMatrix algebra_element(std::span<const Rational> t) const;

  // Floating-point mirrors used by the orbit map and the covering oracle.
  std::span<const double> lambdas_f() const { return lambdas_f_; }
  /// Eigenvalues of ad Y on s in the canonical basis: 1 - lambda_j.
  std::span<const double> ad_scaling() const { return ad_scaling_; }
  const Eigen::MatrixXd& basis_f(std::size_t i) const { return basis_f_[i]; }
  const Eigen::MatrixXd& c_basis_f(std::size_t i) const { return c_basis_f_[i]; }
  Eigen::MatrixXd algebra_element_f(std::span<const double> t) const;
  Eigen::MatrixXd c_of_f(std::span<const double> t) const;

 private:
  ShearletGroupSpec spec_;
  std::vector<RationalMatrix> c_basis_;
  std::vector<RationalVector> structure_;
  std::vector<double> lambdas_f_;
  std::vector<double> ad_scaling_;
  std::vector<Eigen::MatrixXd> basis_f_;
  std::vector<Eigen::MatrixXd> c_basis_f_;
};

ShearMatrixForm shear_from_t(const ShearletGroup& group, std::span<const Rational> t);

/// Exact product in (sign, r, t) coordinates. Throws ExactnessError when
/// b.r != 0 and the scaling acts non-trivially, since that needs e^r.
ExactGroupElement group_mul_coords(const ShearletGroup& group, const ExactGroupElement& a,
                                   const ExactGroupElement& b);
GroupElementCoords group_mul_coords(const ShearletGroup& group, const GroupElementCoords& a,
                                    const GroupElementCoords& b);
GroupElementCoords group_inverse(const ShearletGroup& group, const GroupElementCoords& a);

/// Coordinates of h(r,0)^{-1} h(0,t) h(r,0), i.e. diag(e^{-r(lambda_j - 1)}) t.
std::vector<double> conjugate_shear_by_scaling(const ShearletGroup& group, double r, std::span<const double> t);

/// p(h) = h^{-T} xi_0 with xi_0 = e_1.
std::vector<double> orbit_map(const ShearletGroup& group, const GroupElementCoords& h);

/// Inverse of orbit_map on O = R^* x R^{d-1}. Throws OrbitError when xi_1 == 0.
GroupElementCoords orbit_map_inverse(const ShearletGroup& group, std::span<const double> xi);

/// The d x d matrix sign * exp(-rY) (I + X(t))^{-1}.
Eigen::MatrixXd element_matrix(const ShearletGroup& group, const GroupElementCoords& h);

/// Canonical coordinates of log(I + X(t)); the shearing group is abelian,
/// so these are additive.
std::vector<double> shear_log_coords(const ShearletGroup& group, std::span<const double> t);
std::vector<double> shear_from_log_coords(const ShearletGroup& group, std::span<const double> u);

}  // namespace coorbitsym
