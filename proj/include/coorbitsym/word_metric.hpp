#pragma once

#include <coorbitsym/shearlet_group.hpp>

#include <optional>
#include <vector>

namespace coorbitsym {

/// sign * exp(-rY) exp(-sum u_j X_j). In these coordinates the group law is
/// (r1, u1)(r2, u2) = (r1 + r2, e^{r2 mu} u1 + u2) with mu_j = 1 - lambda_j.
struct LogCoords {
  int sign = 1;
  double r = 0.0;
  std::vector<double> u;
};

LogCoords to_log_coords(const ShearletGroup& group, const GroupElementCoords& h);
GroupElementCoords from_log_coords(const ShearletGroup& group, const LogCoords& g);

LogCoords log_mul(const ShearletGroup& group, const LogCoords& a, const LogCoords& b);
LogCoords log_inverse(const ShearletGroup& group, const LogCoords& a);
LogCoords log_identity(const ShearletGroup& group);

/// Word length for the unit neighborhood
///   W = { (r, u) : |r| <= step, |u_j| <= step * min(1, e^{mu_j r}) },
/// which is symmetric and contained in the identity component.
///
/// (rho, u) lies in W^n iff some height path rho = s_0, ..., s_n = 0 with
/// steps of size <= step has |u_j| <= step * sum_i min(e^{mu_j s_i}, e^{mu_j s_{i-1}})
/// for every j. `length` minimizes n over paths that climb and descend on the
/// grid step*Z, pause at their extreme heights and end with one fractional step,
/// so it is an upper bound for the true word length.
class WordMetric {
 public:
  WordMetric(const ShearletGroup& group, double step);

  double step() const { return step_; }
  std::span<const double> mu() const { return mu_; }

  bool in_unit_neighborhood(const LogCoords& g, double margin = 0.0) const;

  /// nullopt when g is not in the identity component or needs more than max_steps.
  std::optional<int> length(const LogCoords& g, int max_steps) const;

  std::optional<int> distance(const LogCoords& a, const LogCoords& b, int max_steps) const;

 private:
  std::optional<int> anchored_length(const LogCoords& g, int max_steps) const;

  const ShearletGroup* group_;
  double step_;
  std::vector<double> mu_;
};

}  // namespace coorbitsym
