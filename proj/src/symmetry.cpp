#include <coorbitsym/errors.hpp>
#include <coorbitsym/symmetry.hpp>

#include <map>

namespace coorbitsym {

std::string to_string(FailedCondition c) {
  switch (c) {
    case FailedCondition::none: return "NONE";
    case FailedCondition::not_in_S_O: return "NOT_IN_S_O";
    case FailedCondition::not_in_normalizer_S: return "NOT_IN_NORMALIZER_S";
    case FailedCondition::not_commuting_with_Y: return "NOT_COMMUTING_WITH_Y";
  }
  return "NONE";
}

SOBlockForm decompose_S_O(const RationalMatrix& a) {
  if (!a.is_square() || a.rows() < 2) throw DimensionError("expected a square matrix of size at least 2");
  const std::size_t d = a.rows();
  for (std::size_t i = 1; i < d; ++i) {
    if (a(i, 0) != 0) {
      throw NotInSOError("first column is not a multiple of e_1: entry (" + std::to_string(i + 1) + ",1) = " +
                         to_string(a(i, 0)));
    }
  }
  if (a(0, 0) == 0) throw SingularMatrixError("first column of A is zero");
  SOBlockForm form;
  form.lambda = a(0, 0);
  form.z.assign(a.row(0).begin() + 1, a.row(0).end());
  form.b = a.block(1, 1, d - 1, d - 1);
  if (determinant(form.b) == 0) throw SingularMatrixError("lower-right block of A is singular");
  return form;
}

RationalMatrix Factorization::reassemble() const { return lambda * (h * a1); }

Factorization factorize(const ShearletGroup& group, const RationalMatrix& a) {
  if (a.rows() != group.d()) throw DimensionError("matrix size does not match the group dimension");
  const SOBlockForm form = decompose_S_O(a);
  const std::size_t n = group.shear_dim();
  const Rational inv_lambda = 1 / form.lambda;

  RationalMatrix b_prime = inv_lambda * form.b;
  RationalVector z_prime(form.z);
  for (auto& z : z_prime) z *= inv_lambda;

  // z'' = -z' B'^{-1}
  const RationalMatrix b_prime_inv = mat_inverse(b_prime);
  RationalVector z2(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += z_prime[k] * b_prime_inv(k, j);
    z2[j] = -s;
  }

  Factorization f;
  f.lambda = form.lambda;
  f.shear_t = z2;
  const ShearMatrixForm h_inv = shear_from_t(group, z2);
  f.h = mat_inverse(h_inv.matrix);
  RationalMatrix a_prime = inv_lambda * a;
  f.a1 = h_inv.matrix * a_prime;
  f.a1_b = f.a1.block(1, 1, n, n);
  return f;
}

NormalizerResult is_in_normalizer_S(const ShearletGroup& group, const RationalMatrix& b) {
  const std::size_t n = group.shear_dim();
  if (b.rows() != n || b.cols() != n) throw DimensionError("B must be (d-1)x(d-1)");
  const RationalMatrix b_inv = mat_inverse(b);
  NormalizerResult result;
  for (std::size_t i = 0; i < n; ++i) {
    RationalMatrix lhs = b_inv * group.c_basis(i) * b;
    // B^T e_i is the i-th row of B.
    RationalMatrix rhs = group.c_of(b.row(i));
    if (lhs != rhs) {
      result.member = false;
      result.witness = NormalizerWitness{i, std::move(lhs), std::move(rhs)};
      return result;
    }
  }
  return result;
}

std::optional<std::pair<std::size_t, std::size_t>> scaling_commutation_witness(const ShearletGroup& group,
                                                                               const RationalMatrix& b) {
  const std::size_t n = group.shear_dim();
  if (b.rows() != n || b.cols() != n) throw DimensionError("B must be (d-1)x(d-1)");
  const auto lambdas = group.lambdas();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b(i, j) != 0 && lambdas[i] != lambdas[j]) return std::make_pair(i, j);
  return std::nullopt;
}

bool commutes_with_scaling(const ShearletGroup& group, const RationalMatrix& b) {
  const RationalMatrix y = RationalMatrix::diagonal(group.lambdas());
  if (b.rows() != y.rows() || b.cols() != y.cols()) throw DimensionError("B must be (d-1)x(d-1)");
  return b * y == y * b;
}

CompatibilityVerdict is_coorbit_compatible(const ShearletGroup& group, const RationalMatrix& a) {
  if (!a.is_square() || a.rows() != group.d()) throw DimensionError("matrix size does not match the group dimension");
  if (determinant(a) == 0) throw SingularMatrixError("matrix is singular");

  CompatibilityVerdict v;
  try {
    v.factorization = factorize(group, a);
  } catch (const NotInSOError& e) {
    v.failed_condition = FailedCondition::not_in_S_O;
    v.message = e.what();
    return v;
  }
  const RationalMatrix& b = v.factorization->a1_b;

  const NormalizerResult normal = is_in_normalizer_S(group, b);
  if (!normal.member) {
    v.failed_condition = FailedCondition::not_in_normalizer_S;
    v.normalizer_witness = normal.witness;
    v.message = "B^{-1} C(e_" + std::to_string(normal.witness->index + 2) + ") B != C(B^T e_" +
                std::to_string(normal.witness->index + 2) + ")";
    return v;
  }
  if (!commutes_with_scaling(group, b)) {
    v.failed_condition = FailedCondition::not_commuting_with_Y;
    v.commutation_witness = scaling_commutation_witness(group, b);
    const auto [i, j] = *v.commutation_witness;
    v.message = "B does not commute with diag(lambda): entry (" + std::to_string(i + 2) + "," +
                std::to_string(j + 2) + ") links lambda " + to_string(group.lambdas()[i]) + " and " +
                to_string(group.lambdas()[j]);
    return v;
  }
  v.compatible = true;
  return v;
}

namespace {

// Linear constraints on D, where Delta(X_l) = sum_k D(k,l) X_k and the
// unknown D(k,l) sits at position k*n + l.
std::vector<RationalVector> derivation_constraints(const ShearletGroup& group) {
  const std::size_t n = group.shear_dim();
  std::vector<RationalVector> rows;
  auto at = [n](std::size_t k, std::size_t l) { return k * n + l; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const RationalVector& sij = group.structure_constants(i, j);
      for (std::size_t p = 0; p < n; ++p) {
        RationalVector row(n * n);
        for (std::size_t m = 0; m < n; ++m)
          if (sij[m] != 0) row[at(p, m)] += sij[m];
        for (std::size_t k = 0; k < n; ++k) {
          const Rational& skj = group.structure_constants(k, j)[p];
          if (skj != 0) row[at(k, i)] -= skj;
          const Rational& sik = group.structure_constants(i, k)[p];
          if (sik != 0) row[at(k, j)] -= sik;
        }
        bool nonzero = false;
        for (const auto& x : row) nonzero = nonzero || x != 0;
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace

SymmetryGroupReport symmetry_group_report(const ShearletGroup& group) {
  const std::size_t d = group.d();
  const std::size_t n = group.shear_dim();
  const auto lambdas = group.lambdas();

  std::vector<RationalVector> rows = derivation_constraints(group);
  SymmetryGroupReport report;
  report.d = d;
  report.derivation_dim = solve_linear_subspace(rows, n * n).size();

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (lambdas[k] == lambdas[l]) continue;
      RationalVector row(n * n);
      row[k * n + l] = 1;
      rows.push_back(std::move(row));
    }
  }
  const auto solutions = solve_linear_subspace(rows, n * n);
  report.dim_B_component = solutions.size();
  report.dim_total = d + report.dim_B_component;
  report.lower_bound = d;
  report.upper_bound = d * d - d + 1;
  report.bounds_hold = report.lower_bound <= report.dim_total && report.dim_total <= report.upper_bound;
  // t -> B^T t is the automorphism, so the B-block generator is D^T.
  for (const auto& s : solutions) report.generators.push_back(reshape(s, n, n).transpose());

  std::map<Rational, std::size_t> position;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = position.try_emplace(lambdas[i], report.commutant_blocks.size());
    if (inserted) report.commutant_blocks.push_back(CommutantBlock{lambdas[i], {}});
    report.commutant_blocks[it->second].indices.push_back(i);
  }

  report.dimension_label = "connected-component dimension";
  report.notes.push_back(
      "dimension of the identity component, computed from derivations of s commuting with ad Y; "
      "components not reached from the identity are not counted");
  if (report.dim_total == d + 1) {
    report.notes.push_back("dim_total = d + 1, the smallest value known to occur; whether d itself occurs is open");
  } else if (report.dim_total == d) {
    report.notes.push_back("dim_total = d, a value not known to occur for shearlet dilation groups");
  }
  return report;
}

RationalMatrix toeplitz_automorphism_matrix(std::size_t d, std::span<const Rational> c) {
  if (d < 2 || c.size() != d - 1) throw DimensionError("expected d - 1 coefficients c_2..c_d");
  if (c[0] == 0) throw ZeroLeadingCoefficientError("c_2 must be nonzero");
  const ShearletGroup group(make_toeplitz_group(0, d));
  const std::size_t n = d - 1;
  const RationalMatrix x = group.algebra_element(c);
  RationalMatrix power = x;
  RationalMatrix b(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) b(j, k) = power(0, k + 1);
    power = power * x;
  }
  return b;
}

}  // namespace coorbitsym
