#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <coorbitsym/errors.hpp>
#include <coorbitsym/shearlet_group.hpp>
#include <coorbitsym/word_metric.hpp>

#include "support/generators.hpp"

#include <cmath>

using namespace coorbitsym;
using namespace coorbitsym::testing;

namespace {

bool check_passed(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.passed;
  FAIL("no check named " << name);
  return false;
}

std::vector<double> random_floats(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

Eigen::MatrixXd exp_scaling(const ShearletGroup& g, double r) {
  Eigen::VectorXd diag(g.d());
  diag(0) = std::exp(r);
  for (std::size_t j = 1; j < g.d(); ++j) diag(j) = std::exp(r * g.lambdas_f()[j - 1]);
  return diag.asDiagonal();
}

}  // namespace

TEST_CASE("standard group in two dimensions") {
  const auto spec = make_standard_group({Rational(1, 2)});
  CHECK(spec.d == 2);
  CHECK(spec.basis.at(0) == RationalMatrix{{0, 1}, {0, 0}});
  CHECK(spec.scaling_generator() == RationalMatrix{{1, 0}, {0, Rational(1, 2)}});
  CHECK(validate_spec(spec).ok());
}

TEST_CASE("standard group with repeated exponents") {
  const auto spec = make_standard_group({Rational(1, 2), Rational(1, 2)});
  for (const auto& x : spec.basis) {
    for (std::size_t i = 1; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(x(i, j) == 0);
  }
  CHECK(validate_spec(spec).ok());
}

TEST_CASE("random standard groups validate") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 5;
    RationalVector lambdas(n);
    for (auto& l : lambdas) l = random_rational(rng, 9, 7);
    const auto report = validate_spec(make_standard_group(lambdas));
    CHECK_MESSAGE(report.ok(), report.summary());
  }
}

TEST_CASE("Toeplitz group") {
  const auto spec = make_toeplitz_group(0, 3);
  CHECK(spec.basis[0] == RationalMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(spec.basis[1] == RationalMatrix{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}});
  CHECK(spec.scaling_generator() == RationalMatrix::identity(3));

  for (const Rational& delta : {Rational(0), Rational(1, 3), Rational(-2)}) {
    const auto two = make_toeplitz_group(delta, 2);
    const auto std2 = make_standard_group({1 - delta});
    CHECK(two.basis == std2.basis);
    CHECK(two.scaling == std2.scaling);
  }

  const auto five = make_toeplitz_group(Rational(1, 3), 5);
  CHECK(validate_spec(five).ok());
  CHECK(five.basis[0] * five.basis[2] == five.basis[3]);
  CHECK(five.scaling == RationalVector{1, Rational(2, 3), Rational(1, 3), 0, Rational(-1, 3)});
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto s = make_toeplitz_group(Rational(1, 4), d);
    for (std::size_t j = 0; j < d - 1; ++j) CHECK(s.basis[j] == mat_power(s.basis[0], static_cast<unsigned>(j + 1)));
  }
  CHECK_THROWS_AS(make_toeplitz_group(0, 1), SpecError);
}

TEST_CASE("validation reports failures with witnesses") {
  auto spec = make_standard_group({Rational(1, 2)});
  spec.basis[0](0, 1) = 0;
  auto report = validate_spec(spec);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(check_passed(report, "canonical_basis"));

  auto lower = make_standard_group({Rational(1, 2), Rational(1, 3)});
  lower.basis[0](2, 1) = 1;
  CHECK_FALSE(check_passed(validate_spec(lower), "canonical_basis"));

  auto scaled = make_standard_group({Rational(1, 2)});
  scaled.scaling[0] = 2;
  report = validate_spec(scaled);
  CHECK_FALSE(check_passed(report, "scaling_normalized"));
  CHECK(report.summary().find("normalized") != std::string::npos);
  CHECK_THROWS_AS(ShearletGroup{scaled}, SpecError);

  // Closed and commutative, but X3 X3 = X4 breaks the filtration.
  ShearletGroupSpec unfiltered;
  unfiltered.d = 4;
  unfiltered.scaling = {1, 1, 1, 1};
  unfiltered.basis = {RationalMatrix::unit(4, 4, 0, 1), RationalMatrix::unit(4, 4, 0, 2) + RationalMatrix::unit(4, 4, 2, 3),
                      RationalMatrix::unit(4, 4, 0, 3)};
  report = validate_spec(unfiltered);
  CHECK(check_passed(report, "closure"));
  CHECK(check_passed(report, "commutativity"));
  CHECK_FALSE(check_passed(report, "filtration"));

  ShearletGroupSpec not_closed;
  not_closed.d = 3;
  not_closed.scaling = {1, 1, 1};
  not_closed.basis = {RationalMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, RationalMatrix{{0, 0, 1}, {0, 0, 2}, {0, 0, 0}}};
  report = validate_spec(not_closed);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(check_passed(report, "closure"));

  ShearletGroupSpec wrong_count = make_standard_group({Rational(1, 2), Rational(1, 3)});
  wrong_count.basis.pop_back();
  CHECK_FALSE(check_passed(validate_spec(wrong_count), "shape"));
}

TEST_CASE("scaling compatibility is the span condition on [Y, X2]") {
  auto spec = make_toeplitz_group(0, 3);
  for (auto [l2, l3, expected] : {std::tuple{Rational(1, 2), Rational(0), true},
                                  std::tuple{Rational(1, 2), Rational(1, 4), false},
                                  std::tuple{Rational(1, 2), Rational(1, 3), false}}) {
    spec.scaling = {1, l2, l3};
    const RationalMatrix bracket = commutator(spec.scaling_generator(), spec.basis[0]);
    const bool in_span = span_coordinates(spec.basis, bracket).has_value();
    CHECK(in_span == expected);
    CHECK(check_passed(validate_spec(spec), "scaling_compatibility") == expected);
  }
}

TEST_CASE("shear_from_t and C(t)") {
  const ShearletGroup toeplitz(make_toeplitz_group(0, 3));
  const auto zero = shear_from_t(toeplitz, RationalVector{0, 0});
  CHECK(zero.matrix == RationalMatrix::identity(3));
  CHECK(zero.c_block.is_zero());

  const auto f = shear_from_t(toeplitz, RationalVector{1, 0});
  CHECK(f.matrix == RationalMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(f.c_block == RationalMatrix{{0, 1}, {0, 0}});
  CHECK(f.matrix.block(1, 1, 2, 2) == RationalMatrix::identity(2) + f.c_block);

  const ShearletGroup standard(make_standard_group({Rational(1, 2), Rational(1, 3)}));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) CHECK(shear_from_t(standard, random_vector(rng, 2)).c_block.is_zero());
}

TEST_CASE("exact shear products") {
  const ShearletGroup standard(make_standard_group({Rational(1, 2), Rational(1, 3)}));
  const ExactGroupElement a{1, 0, {Rational(1, 2), 3}}, b{1, 0, {-2, Rational(5, 7)}};
  CHECK(group_mul_coords(standard, a, b).t == RationalVector{Rational(-3, 2), Rational(26, 7)});

  const ShearletGroup toeplitz(make_toeplitz_group(0, 3));
  const ExactGroupElement e{1, 0, {1, 0}};
  CHECK(group_mul_coords(toeplitz, e, e).t == RationalVector{2, 1});

  const ExactGroupElement m{-1, 0, {0, 0}};
  CHECK(group_mul_coords(toeplitz, m, m).sign == 1);

  const ExactGroupElement scaled{1, 1, {0, 0}};
  CHECK_THROWS_AS(group_mul_coords(standard, a, scaled), ExactnessError);
  // trivial scaling: r adds exactly
  const ShearletGroup flat(make_toeplitz_group(0, 3));
  CHECK(group_mul_coords(flat, scaled, scaled).r == 2);
}

TEST_CASE("shear product formula matches matrix multiplication") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const ShearletGroup group(random_spec(rng));
    const std::size_t n = group.shear_dim();
    const RationalVector t1 = random_vector(rng, n), t2 = random_vector(rng, n);
    const auto prod = group_mul_coords(group, ExactGroupElement{1, 0, t1}, ExactGroupElement{1, 0, t2});
    // h(0,t) = (I + X(t))^{-1}, so h(0,t1) h(0,t2) = ((I + X(t2))(I + X(t1)))^{-1}.
    const RationalMatrix direct = shear_from_t(group, t2).matrix * shear_from_t(group, t1).matrix;
    CHECK(direct == shear_from_t(group, prod.t).matrix);
  }
}

TEST_CASE("conjugation by the scaling") {
  std::mt19937_64 rng(3);
  const ShearletGroup two(make_standard_group({Rational(1, 2)}));
  const std::vector<double> t{1.7};
  CHECK(conjugate_shear_by_scaling(two, 0.0, t) == t);
  CHECK(conjugate_shear_by_scaling(two, std::log(4.0), std::vector<double>{1.0})[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(conjugate_shear_by_scaling(two, 3.0, std::vector<double>{0.0})[0] == 0.0);

  for (int k = 0; k < 50; ++k) {
    const ShearletGroup group(random_spec(rng));
    const double r = std::uniform_real_distribution<double>(-2, 2)(rng);
    const auto tt = random_floats(rng, group.shear_dim(), 2.0);
    // exp(rY) h(0,t) exp(-rY)
    const GroupElementCoords h{1, 0.0, tt};
    const Eigen::MatrixXd direct = exp_scaling(group, r) * element_matrix(group, h) * exp_scaling(group, -r);
    const GroupElementCoords moved{1, 0.0, conjugate_shear_by_scaling(group, r, tt)};
    CHECK((element_matrix(group, moved) - direct).norm() <= 1e-10 * direct.norm());
  }
}

TEST_CASE("orbit map") {
  const ShearletGroup two(make_standard_group({Rational(1, 2)}));
  CHECK(orbit_map(two, GroupElementCoords{1, 0, {0}}) == std::vector<double>{1, 0});
  const auto xi = orbit_map(two, GroupElementCoords{1, std::log(2.0), {3}});
  CHECK(xi[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(xi[1] == doctest::Approx(std::sqrt(2.0) * 3).epsilon(1e-12));
  CHECK(orbit_map(two, GroupElementCoords{-1, 0, {0}}) == std::vector<double>{-1, 0});

  const auto id = orbit_map_inverse(two, std::vector<double>{1, 0});
  CHECK(id.sign == 1);
  CHECK(id.r == 0.0);
  CHECK(id.t[0] == 0.0);
  const auto h = orbit_map_inverse(two, std::vector<double>{2, 3 * std::sqrt(2.0)});
  CHECK(h.sign == 1);
  CHECK(h.r == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(h.t[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(orbit_map_inverse(two, std::vector<double>{0, 1}), OrbitError);
}

TEST_CASE("orbit map is h^{-T} e_1 and inverts on O") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const ShearletGroup group(random_spec(rng));
    const int sign = k % 2 ? -1 : 1;
    const GroupElementCoords h{sign, std::uniform_real_distribution<double>(-2, 2)(rng),
                               random_floats(rng, group.shear_dim(), 3.0)};
    const auto xi = orbit_map(group, h);
    const Eigen::VectorXd direct = element_matrix(group, h).inverse().transpose().col(0);
    for (std::size_t i = 0; i < xi.size(); ++i) CHECK(xi[i] == doctest::Approx(direct(i)).epsilon(1e-10));

    auto point = random_floats(rng, group.d(), 5.0);
    if (point[0] == 0.0) point[0] = 1.0;
    const auto back = orbit_map(group, orbit_map_inverse(group, point));
    for (std::size_t i = 0; i < point.size(); ++i)
      CHECK(std::abs(back[i] - point[i]) <= 1e-10 * std::max(1.0, std::abs(point[i])));
  }
}

TEST_CASE("float group law agrees with matrices") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const ShearletGroup group(random_spec(rng));
    const std::size_t n = group.shear_dim();
    std::uniform_real_distribution<double> ur(-1.5, 1.5);
    const GroupElementCoords a{k % 3 ? 1 : -1, ur(rng), random_floats(rng, n, 2.0)};
    const GroupElementCoords b{1, ur(rng), random_floats(rng, n, 2.0)};
    const Eigen::MatrixXd prod = element_matrix(group, a) * element_matrix(group, b);
    CHECK((element_matrix(group, group_mul_coords(group, a, b)) - prod).norm() <= 1e-9 * prod.norm());
    const Eigen::MatrixXd inv = element_matrix(group, a).inverse();
    CHECK((element_matrix(group, group_inverse(group, a)) - inv).norm() <= 1e-9 * inv.norm());

    // log coordinates: same element, additive law
    const LogCoords la = to_log_coords(group, a), lb = to_log_coords(group, b);
    const Eigen::MatrixXd via_log = element_matrix(group, from_log_coords(group, log_mul(group, la, lb)));
    CHECK((via_log - prod).norm() <= 1e-9 * prod.norm());
    const auto round = shear_from_log_coords(group, shear_log_coords(group, a.t));
    for (std::size_t j = 0; j < n; ++j) CHECK(round[j] == doctest::Approx(a.t[j]).epsilon(1e-10));
  }
}
