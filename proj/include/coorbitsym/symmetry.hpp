#pragma once

#include <coorbitsym/shearlet_group.hpp>

#include <optional>
#include <string>
#include <vector>

namespace coorbitsym {

/// A = [[lambda, z], [0, B]].
struct SOBlockForm {
  Rational lambda;
  RationalVector z;
  RationalMatrix b;
};

/// Throws NotInSOError unless A is square, nonsingular and has first column lambda*e_1.
SOBlockForm decompose_S_O(const RationalMatrix& a);

/// A = lambda * h * A1 with h = shear_from_t(shear_t)^{-1} in S and
/// A1 = diag(1, a1_b).
struct Factorization {
  Rational lambda;
  RationalVector shear_t;
  RationalMatrix h;
  RationalMatrix a1;
  RationalMatrix a1_b;

  RationalMatrix reassemble() const;
};

Factorization factorize(const ShearletGroup& group, const RationalMatrix& a);

struct NormalizerWitness {
  std::size_t index = 0;  // zero-based, so 0 is e_2
  RationalMatrix lhs;     // B^{-1} C(e_i) B
  RationalMatrix rhs;     // C(B^T e_i)
};

struct NormalizerResult {
  bool member = true;
  std::optional<NormalizerWitness> witness;
};

NormalizerResult is_in_normalizer_S(const ShearletGroup& group, const RationalMatrix& b);

/// B diag(lambda_2..lambda_d) == diag(lambda_2..lambda_d) B.
bool commutes_with_scaling(const ShearletGroup& group, const RationalMatrix& b);

/// First offending entry (zero-based within B) of the commutation test.
std::optional<std::pair<std::size_t, std::size_t>> scaling_commutation_witness(const ShearletGroup& group,
                                                                               const RationalMatrix& b);

enum class FailedCondition { none, not_in_S_O, not_in_normalizer_S, not_commuting_with_Y };

std::string to_string(FailedCondition c);

struct CompatibilityVerdict {
  bool compatible = false;
  FailedCondition failed_condition = FailedCondition::none;
  std::string message;
  std::optional<Factorization> factorization;
  std::optional<NormalizerWitness> normalizer_witness;
  std::optional<std::pair<std::size_t, std::size_t>> commutation_witness;
};

/// Throws SingularMatrixError for singular A and DimensionError for a
/// wrong shape; every other outcome is a verdict.
CompatibilityVerdict is_coorbit_compatible(const ShearletGroup& group, const RationalMatrix& a);

struct CommutantBlock {
  Rational lambda;
  std::vector<std::size_t> indices;  // zero-based positions within lambda_2..lambda_d
};

struct SymmetryGroupReport {
  std::size_t d = 0;
  std::size_t derivation_dim = 0;        // derivations of s alone
  std::size_t dim_B_component = 0;       // derivations commuting with ad Y
  std::size_t dim_total = 0;             // d + dim_B_component
  std::size_t lower_bound = 0;           // d
  std::size_t upper_bound = 0;           // d^2 - d + 1
  bool bounds_hold = false;
  std::vector<CommutantBlock> commutant_blocks;
  std::vector<RationalMatrix> generators;  // basis of the B-block tangent space
  std::string dimension_label;
  std::vector<std::string> notes;
};

SymmetryGroupReport symmetry_group_report(const ShearletGroup& group);

/// Rows are the canonical coordinates of (sum_i c_i X_i)^(j-1), j = 2..d,
/// for the Toeplitz algebra. c = (c_2, ..., c_d).
RationalMatrix toeplitz_automorphism_matrix(std::size_t d, std::span<const Rational> c);

}  // namespace coorbitsym
