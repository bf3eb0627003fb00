#include <coorbitsym/errors.hpp>
#include <coorbitsym/example_suite.hpp>

#include <random>
#include <sstream>

namespace coorbitsym {

bool FixtureSuite::ok() const {
  for (const auto& f : fixtures)
    if (!f.passed) return false;
  return true;
}

std::vector<RationalMatrix> matrix_grid_2x2(int lo, int hi, std::size_t count) {
  std::vector<RationalMatrix> all;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      for (int c = lo; c <= hi; ++c)
        for (int d = lo; d <= hi; ++d)
          if (a * d - b * c != 0) all.push_back(RationalMatrix{{a, b}, {c, d}});
  if (count >= all.size()) return all;
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

bool shearlet_2d_expected(const RationalMatrix& a) { return a(1, 0) == 0 && a(0, 0) != 0 && a(1, 1) != 0; }

bool diagonal_group_expected(const RationalMatrix& a) {
  const bool diagonal = a(0, 1) == 0 && a(1, 0) == 0;
  const bool anti = a(0, 0) == 0 && a(1, 1) == 0;
  return determinant(a) != 0 && (diagonal || anti);
}

bool similitude_group_expected(const RationalMatrix& a) { return determinant(a) != 0; }

namespace {

bool is_diagonal(const RationalMatrix& m) { return m(0, 1) == 0 && m(1, 0) == 0; }

}  // namespace

bool normalizes_diagonal_group(const RationalMatrix& a) {
  const RationalMatrix inv = mat_inverse(a);
  return is_diagonal(a * RationalMatrix::unit(2, 2, 0, 0) * inv) && is_diagonal(a * RationalMatrix::unit(2, 2, 1, 1) * inv);
}

bool normalizes_similitude_group(const RationalMatrix& a) {
  const RationalMatrix j{{0, 1}, {-1, 0}};
  const RationalMatrix m = a * j * mat_inverse(a);
  // aI + bJ: equal diagonal, opposite off-diagonal; the image of J must be traceless too.
  return m(0, 0) == m(1, 1) && m(0, 1) == -m(1, 0) && m(0, 0) == 0;
}

RationalMatrix toeplitz_closed_form(std::size_t d, std::span<const Rational> c) {
  if (c.size() != d - 1) throw DimensionError("expected d - 1 coefficients");
  const Rational c2 = c[0], c3 = c.size() > 1 ? c[1] : 0, c4 = c.size() > 2 ? c[2] : 0,
                 c5 = c.size() > 3 ? c[3] : 0;
  switch (d) {
    case 3: return RationalMatrix{{c2, c3}, {0, c2 * c2}};
    case 4: return RationalMatrix{{c2, c3, c4}, {0, c2 * c2, 2 * c2 * c3}, {0, 0, c2 * c2 * c2}};
    case 5:
      return RationalMatrix{{c2, c3, c4, c5},
                            {0, c2 * c2, 2 * c2 * c3, 2 * c2 * c4 + c3 * c3},
                            {0, 0, c2 * c2 * c2, 3 * c2 * c2 * c3},
                            {0, 0, 0, c2 * c2 * c2 * c2}};
    default: throw DimensionError("closed form only for d = 3, 4, 5");
  }
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t rest, std::size_t max_part) -> void {
    if (rest == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = std::min(rest, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, rest - p, p);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

RationalVector lambdas_for_partition(const std::vector<std::size_t>& parts) {
  RationalVector out;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (std::size_t i = 0; i < parts[k]; ++i) out.push_back(Rational(1, static_cast<long>(k + 2)));
  return out;
}

namespace {

std::string join_parts(const std::vector<std::size_t>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "+" : "") + std::to_string(parts[i]);
  return s;
}

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return make_rational(p, den(rng));
}

FixtureResult shearlet_2d_table(const Rational& c) {
  const ShearletGroup group(make_standard_group({c}));
  std::size_t mismatches = 0, total = 0;
  std::string first;
  for (const auto& a : matrix_grid_2x2(-2, 2, 200)) {
    ++total;
    if (is_coorbit_compatible(group, a).compatible != shearlet_2d_expected(a)) {
      if (!mismatches) first = to_string(a);
      ++mismatches;
    }
  }
  FixtureResult r{"2d shearlet S_c, c = " + to_string(c), mismatches == 0,
                  std::to_string(total) + " matrices, " + std::to_string(mismatches) + " mismatches"};
  if (mismatches) r.detail += ", first " + first;
  return r;
}

}  // namespace

FixtureSuite run_example_suite(std::uint64_t seed) {
  FixtureSuite suite;
  auto add = [&](std::string name, bool ok, std::string detail) {
    suite.fixtures.push_back(FixtureResult{std::move(name), ok, std::move(detail)});
  };

  for (const Rational& c : {Rational(0), Rational(1, 2), Rational(1)}) suite.fixtures.push_back(shearlet_2d_table(c));
  {
    const ShearletGroup group(make_standard_group({Rational(1, 2)}));
    const auto v = is_coorbit_compatible(group, RationalMatrix{{1, 0}, {0, 5}});
    add("2d shearlet diag(1,5) compatible", v.compatible, to_string(v.failed_condition));
    const auto w = is_coorbit_compatible(group, RationalMatrix{{0, 1}, {1, 0}});
    add("2d shearlet flip rejected", !w.compatible && w.failed_condition == FailedCondition::not_in_S_O,
        to_string(w.failed_condition));
  }
  {
    std::size_t mismatches = 0, total = 0;
    for (const auto& a : matrix_grid_2x2(-2, 2, 200)) {
      ++total;
      if (normalizes_diagonal_group(a) != diagonal_group_expected(a)) ++mismatches;
    }
    const RationalMatrix ra = RationalMatrix{{0, 1}, {1, 0}} * RationalMatrix{{3, 0}, {0, -2}};
    const bool reflection = diagonal_group_expected(ra) && normalizes_diagonal_group(ra);
    add("2d diagonal group", mismatches == 0 && reflection,
        std::to_string(total) + " matrices, " + std::to_string(mismatches) + " mismatches; R*diag(3,-2) " +
            (reflection ? "compatible" : "rejected"));
  }
  {
    std::size_t strict = 0, total = 0;
    bool all = true;
    for (const auto& a : matrix_grid_2x2(-2, 2, 200)) {
      ++total;
      all = all && similitude_group_expected(a);
      if (!normalizes_similitude_group(a)) ++strict;
    }
    add("2d similitude group", all && strict > 0,
        "all " + std::to_string(total) + " compatible; " + std::to_string(strict) + " outside the normalizer");
  }

  for (std::size_t d = 2; d <= 5; ++d) {
    for (const auto& parts : partitions(d - 1)) {
      const ShearletGroup group(make_standard_group(lambdas_for_partition(parts)));
      std::size_t expected = d;
      for (auto p : parts) expected += p * p;
      const auto report = symmetry_group_report(group);
      add("standard d=" + std::to_string(d) + " multiplicities " + join_parts(parts), report.dim_total == expected,
          "dim " + std::to_string(report.dim_total) + ", expected " + std::to_string(expected));
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t d = 3; d <= 5; ++d) {
    const ShearletGroup group(make_toeplitz_group(0, d));
    bool ok = true;
    std::string detail;
    for (int k = 0; k < 5; ++k) {
      RationalVector c(d - 1);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = random_rational(rng, i == 0);
      const RationalMatrix b = toeplitz_automorphism_matrix(d, c);
      const bool same = b == toeplitz_closed_form(d, c);
      const bool normal = is_in_normalizer_S(group, b).member;
      if ((!same || !normal) && detail.empty()) {
        detail = "c = " + to_string(reshape(c, 1, c.size())) + (same ? "" : " differs from closed form") +
                 (normal ? "" : " fails normalizer test");
      }
      ok = ok && same && normal;
    }
    add("toeplitz automorphisms d=" + std::to_string(d), ok, ok ? "5 random c vectors" : detail);
  }
  for (std::size_t d = 3; d <= 5; ++d) {
    for (const Rational& delta : {Rational(0), Rational(1, 3)}) {
      const auto report = symmetry_group_report(ShearletGroup(make_toeplitz_group(delta, d)));
      const std::size_t expected = delta == 0 ? 2 * d - 1 : d + 1;
      add("toeplitz d=" + std::to_string(d) + " delta=" + to_string(delta), report.dim_total == expected,
          "dim " + std::to_string(report.dim_total) + ", expected " + std::to_string(expected));
    }
  }
  return suite;
}

}  // namespace coorbitsym
