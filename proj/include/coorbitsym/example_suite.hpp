#pragma once

#include <coorbitsym/symmetry.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace coorbitsym {

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FixtureSuite {
  std::vector<FixtureResult> fixtures;
  bool ok() const;
};

/// The fixed example suite behind `coorbitsym paper-examples`.
FixtureSuite run_example_suite(std::uint64_t seed = 7);

/// Nonsingular 2x2 integer matrices with entries in [lo, hi], evenly thinned to `count`.
std::vector<RationalMatrix> matrix_grid_2x2(int lo, int hi, std::size_t count);

/// Expected answers for the two-dimensional groups.
bool shearlet_2d_expected(const RationalMatrix& a);    // upper triangular, ad != 0
bool diagonal_group_expected(const RationalMatrix& a);  // diagonal or antidiagonal
bool similitude_group_expected(const RationalMatrix& a);  // every nonsingular A

/// A D A^{-1} = D for the diagonal group, tested on its Lie algebra.
bool normalizes_diagonal_group(const RationalMatrix& a);
/// A H A^{-1} = H for the similitude group {aI + bJ}.
bool normalizes_similitude_group(const RationalMatrix& a);

/// The closed forms for the Toeplitz automorphism matrix in d = 3, 4, 5.
RationalMatrix toeplitz_closed_form(std::size_t d, std::span<const Rational> c);

/// Partitions of n into positive parts, largest first.
std::vector<std::vector<std::size_t>> partitions(std::size_t n);

/// Exponents realizing a partition: part k gets lambda = 1/(k+2).
RationalVector lambdas_for_partition(const std::vector<std::size_t>& parts);

}  // namespace coorbitsym
