#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <coorbitsym/errors.hpp>
#include <coorbitsym/example_suite.hpp>
#include <coorbitsym/symmetry.hpp>

#include "support/generators.hpp"
#include "support/normalizer_oracle.hpp"

#include <map>

using namespace coorbitsym;
using namespace coorbitsym::testing;

TEST_CASE("decompose_S_O") {
  const auto id = decompose_S_O(RationalMatrix::identity(3));
  CHECK(id.lambda == 1);
  CHECK(id.z == RationalVector{0, 0});
  CHECK(id.b == RationalMatrix::identity(2));

  const auto f = decompose_S_O(RationalMatrix{{2, 5}, {0, 3}});
  CHECK(f.lambda == 2);
  CHECK(f.z == RationalVector{5});
  CHECK(f.b == RationalMatrix{{3}});

  CHECK_THROWS_AS(decompose_S_O(RationalMatrix{{1, 0}, {1, 1}}), NotInSOError);
  CHECK_THROWS_AS(decompose_S_O(RationalMatrix{{1, 0}, {0, 0}}), SingularMatrixError);
}

TEST_CASE("factorize") {
  const ShearletGroup two(make_standard_group({Rational(1, 2)}));
  const auto f = factorize(two, RationalMatrix{{2, 4}, {0, 6}});
  CHECK(f.lambda == 2);
  CHECK(f.shear_t == RationalVector{Rational(-2, 3)});
  CHECK(mat_inverse(f.h) == RationalMatrix{{1, Rational(-2, 3)}, {0, 1}});
  CHECK(f.a1 == RationalMatrix{{1, 0}, {0, 3}});
  CHECK(f.reassemble() == RationalMatrix{{2, 4}, {0, 6}});

  const ShearletGroup three(make_toeplitz_group(Rational(1, 3), 3));
  const auto g = factorize(three, RationalMatrix::identity(3));
  CHECK(g.lambda == 1);
  CHECK(g.shear_t == RationalVector{0, 0});
  CHECK(g.a1_b == RationalMatrix::identity(2));

  const auto s = factorize(three, Rational(5) * RationalMatrix::identity(3));
  CHECK(s.lambda == 5);
  CHECK(s.shear_t == RationalVector{0, 0});
  CHECK(s.a1_b == RationalMatrix::identity(2));

  CHECK_THROWS_AS(factorize(two, RationalMatrix{{1, 0}, {2, 1}}), NotInSOError);
}

TEST_CASE("factorization is exact on random S(O) matrices") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const ShearletGroup group(random_spec(rng));
    const RationalMatrix a = random_S_O(rng, group.d());
    const auto f = factorize(group, a);
    CHECK(f.reassemble() == a);
    CHECK(f.a1(0, 0) == 1);
    for (std::size_t j = 1; j < group.d(); ++j) {
      CHECK(f.a1(0, j) == 0);
      CHECK(f.a1(j, 0) == 0);
    }
    // h lies in S
    CHECK(group.algebra_coordinates(f.h - RationalMatrix::identity(group.d())).has_value());
  }
}

TEST_CASE("normalizer of S") {
  std::mt19937_64 rng(22);
  for (std::size_t d = 2; d <= 5; ++d) {
    const ShearletGroup standard(make_standard_group(random_lambdas(rng, d - 1)));
    for (int k = 0; k < 10; ++k) CHECK(is_in_normalizer_S(standard, random_nonsingular(rng, d - 1)).member);
  }

  const ShearletGroup toeplitz(make_toeplitz_group(0, 3));
  CHECK(is_in_normalizer_S(toeplitz, RationalMatrix{{2, 5}, {0, 4}}).member);
  const auto r = is_in_normalizer_S(toeplitz, RationalMatrix{{2, 5}, {0, 3}});
  CHECK_FALSE(r.member);
  REQUIRE(r.witness);
  CHECK(r.witness->index == 0);
  CHECK(r.witness->lhs != r.witness->rhs);
  CHECK(r.witness->rhs == toeplitz.c_of(RationalVector{2, 5}));
}

TEST_CASE("commutation with the scaling") {
  const ShearletGroup distinct(make_standard_group({2, 3}));
  CHECK(commutes_with_scaling(distinct, RationalMatrix{{4, 0}, {0, -7}}));
  CHECK_FALSE(commutes_with_scaling(distinct, RationalMatrix{{1, 1}, {0, 1}}));
  CHECK(scaling_commutation_witness(distinct, RationalMatrix{{1, 1}, {0, 1}}) == std::make_pair<std::size_t, std::size_t>(0, 1));
  const ShearletGroup equal(make_standard_group({2, 2}));
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) CHECK(commutes_with_scaling(equal, random_nonsingular(rng, 2)));
}

TEST_CASE("compatibility verdicts") {
  const ShearletGroup two(make_standard_group({Rational(1, 2)}));
  const auto v = is_coorbit_compatible(two, RationalMatrix{{1, 0}, {0, 5}});
  CHECK(v.compatible);
  CHECK(v.failed_condition == FailedCondition::none);

  const auto flip = is_coorbit_compatible(two, RationalMatrix{{0, 1}, {1, 0}});
  CHECK_FALSE(flip.compatible);
  CHECK(flip.failed_condition == FailedCondition::not_in_S_O);

  CHECK_THROWS_AS(is_coorbit_compatible(two, RationalMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
  CHECK_THROWS_AS(is_coorbit_compatible(two, RationalMatrix::identity(3)), DimensionError);

  const ShearletGroup toeplitz(make_toeplitz_group(0, 3));
  const auto n = is_coorbit_compatible(toeplitz, RationalMatrix{{1, 0, 0}, {0, 2, 5}, {0, 0, 3}});
  CHECK(n.failed_condition == FailedCondition::not_in_normalizer_S);
  CHECK(n.normalizer_witness.has_value());
}

TEST_CASE("commutation failure is seen by sampling conjugates") {
  const ShearletGroup group(make_standard_group({Rational(1, 2), Rational(1, 3)}));
  const RationalMatrix a{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
  const auto v = is_coorbit_compatible(group, a);
  CHECK_FALSE(v.compatible);
  CHECK(v.failed_condition == FailedCondition::not_commuting_with_Y);
  CHECK_FALSE(brute_force_normalizes(group, a));

  const Eigen::MatrixXd af = to_float(a), af_inv = af.inverse();
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> ur(0.2, 2.0), ut(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const double r = (k % 2 ? 1 : -1) * ur(rng);
    const GroupElementCoords h{k % 3 ? 1 : -1, r, {ut(rng), ut(rng)}};
    CHECK(membership_residual(group, af * element_matrix(group, h) * af_inv) > 1e-6);
  }

  const RationalMatrix good = random_compatible(group, rng);
  CHECK(is_coorbit_compatible(group, good).compatible);
  const Eigen::MatrixXd gf = to_float(good), gf_inv = gf.inverse();
  for (int k = 0; k < 50; ++k) {
    const GroupElementCoords h{1, ut(rng), {ut(rng), ut(rng)}};
    CHECK(membership_residual(group, gf * element_matrix(group, h) * gf_inv) < 1e-9);
  }
}

TEST_CASE("elements of H are compatible") {
  // diag(4, 2) = exp(-rY) for r = -ln 4 and lambda = 1/2
  const ShearletGroup two(make_standard_group({Rational(1, 2)}));
  const RationalMatrix d{{4, 0}, {0, 2}};
  std::mt19937_64 rng(25);
  for (int k = 0; k < 20; ++k) {
    const RationalMatrix s = mat_inverse(shear_from_t(two, random_vector(rng, 1)).matrix);
    const RationalMatrix h = (k % 2 ? Rational(-1) : Rational(1)) * (d * s);
    CHECK(is_coorbit_compatible(two, h).compatible);
  }
  const ShearletGroup toeplitz(make_toeplitz_group(0, 4));
  for (int k = 0; k < 20; ++k) {
    const RationalMatrix s = mat_inverse(shear_from_t(toeplitz, random_vector(rng, 3)).matrix);
    CHECK(is_coorbit_compatible(toeplitz, Rational(3) * s).compatible);
  }
}

TEST_CASE("compatible matrices form a group") {
  std::mt19937_64 rng(26);
  for (int k = 0; k < 50; ++k) {
    const ShearletGroup group(random_spec(rng));
    const RationalMatrix a = random_compatible(group, rng), b = random_compatible(group, rng);
    CHECK(is_coorbit_compatible(group, a).compatible);
    CHECK(is_coorbit_compatible(group, a * b).compatible);
    CHECK(is_coorbit_compatible(group, mat_inverse(a)).compatible);
  }
}

TEST_CASE("decider agrees with the brute-force normalizer") {
  std::mt19937_64 rng(27);
  for (int k = 0; k < 100; ++k) {
    const ShearletGroup group(random_spec(rng, 2, 4));
    const RationalMatrix a = k % 2 ? random_S_O(rng, group.d()) : random_compatible(group, rng);
    CHECK(is_coorbit_compatible(group, a).compatible == brute_force_normalizes(group, a));
  }
}

TEST_CASE("symmetry group dimensions") {
  const auto equal = symmetry_group_report(ShearletGroup(make_standard_group({Rational(1, 2), Rational(1, 2)})));
  CHECK(equal.dim_total == 7);
  CHECK(equal.dim_total == equal.upper_bound);

  const auto two_one =
      symmetry_group_report(ShearletGroup(make_standard_group({Rational(1, 2), Rational(1, 2), Rational(1, 3)})));
  CHECK(two_one.dim_total == 9);
  REQUIRE(two_one.commutant_blocks.size() == 2);
  CHECK(two_one.commutant_blocks[0].indices.size() == 2);
  CHECK(two_one.commutant_blocks[1].indices.size() == 1);
  CHECK(two_one.generators.size() == 5);

  const auto t5 = symmetry_group_report(ShearletGroup(make_toeplitz_group(Rational(1, 3), 5)));
  CHECK(t5.dim_total == 6);
  CHECK(t5.notes.size() == 2);
  const auto t4 = symmetry_group_report(ShearletGroup(make_toeplitz_group(0, 4)));
  CHECK(t4.dim_total == 7);
  CHECK(t4.derivation_dim == 3);
  CHECK(t4.dimension_label == "connected-component dimension");

  const auto d2 = symmetry_group_report(ShearletGroup(make_standard_group({Rational(7, 3)})));
  CHECK(d2.dim_total == 3);
}

TEST_CASE("standard dimension counts multiplicities") {
  std::mt19937_64 rng(28);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 5;
    const RationalVector lambdas = random_lambdas(rng, n);
    std::map<Rational, std::size_t> mult;
    for (const auto& l : lambdas) ++mult[l];
    std::size_t sum = 0;
    for (const auto& [l, m] : mult) sum += m * m;
    const auto report = symmetry_group_report(ShearletGroup(make_standard_group(lambdas)));
    CHECK(report.dim_B_component == sum);
    CHECK(report.bounds_hold);
  }
}

TEST_CASE("B-block generators are tangent to the symmetry group") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 20; ++k) {
    const ShearletGroup group(random_spec(rng));
    const auto report = symmetry_group_report(group);
    for (const auto& g : report.generators) {
      // I + eps G is compatible to first order: check the two linearized conditions.
      for (std::size_t i = 0; i < group.shear_dim(); ++i) {
        const RationalMatrix lhs = group.c_basis(i) * g - g * group.c_basis(i);
        CHECK(lhs == group.c_of(g.row(i)));
      }
      CHECK(commutes_with_scaling(group, g));
    }
  }
}

TEST_CASE("Toeplitz automorphism matrices") {
  CHECK(toeplitz_automorphism_matrix(4, RationalVector{1, 1, 1}) == RationalMatrix{{1, 1, 1}, {0, 1, 2}, {0, 0, 1}});
  CHECK(toeplitz_automorphism_matrix(5, RationalVector{1, 1, 0, 0})(1, 3) == 1);
  CHECK_THROWS_AS(toeplitz_automorphism_matrix(4, RationalVector{0, 1, 1}), ZeroLeadingCoefficientError);
  CHECK_THROWS_AS(toeplitz_automorphism_matrix(4, RationalVector{1, 1}), DimensionError);

  std::mt19937_64 rng(30);
  for (int k = 0; k < 100; ++k) {
    const std::size_t d = 2 + k % 5;
    RationalVector c = random_vector(rng, d - 1);
    if (c[0] == 0) c[0] = 1;
    const RationalMatrix b = toeplitz_automorphism_matrix(d, c);
    CHECK(is_in_normalizer_S(ShearletGroup(make_toeplitz_group(0, d)), b).member);
    if (d >= 3 && d <= 5) CHECK(b == toeplitz_closed_form(d, c));
  }
}

TEST_CASE("row 3 of the d = 5 closed form needs the factor 3") {
  const RationalVector c{2, 1, 0, 0};
  RationalMatrix b = toeplitz_closed_form(5, c);
  CHECK(b(2, 3) == 12);
  b(2, 3) = c[0] * c[0] * c[1];
  CHECK_FALSE(is_in_normalizer_S(ShearletGroup(make_toeplitz_group(0, 5)), b).member);
}
