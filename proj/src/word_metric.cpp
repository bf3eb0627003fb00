#include <coorbitsym/errors.hpp>
#include <coorbitsym/word_metric.hpp>

#include <algorithm>
#include <cmath>

namespace coorbitsym {

LogCoords to_log_coords(const ShearletGroup& group, const GroupElementCoords& h) {
  return LogCoords{h.sign, h.r, shear_log_coords(group, h.t)};
}

GroupElementCoords from_log_coords(const ShearletGroup& group, const LogCoords& g) {
  return GroupElementCoords{g.sign, g.r, shear_from_log_coords(group, g.u)};
}

LogCoords log_mul(const ShearletGroup& group, const LogCoords& a, const LogCoords& b) {
  if (a.u.size() != group.shear_dim() || b.u.size() != group.shear_dim())
    throw DimensionError("log coordinate vector has wrong length");
  const auto mu = group.ad_scaling();
  LogCoords out{a.sign * b.sign, a.r + b.r, std::vector<double>(a.u.size())};
  for (std::size_t j = 0; j < a.u.size(); ++j) out.u[j] = std::exp(b.r * mu[j]) * a.u[j] + b.u[j];
  return out;
}

LogCoords log_inverse(const ShearletGroup& group, const LogCoords& a) {
  const auto mu = group.ad_scaling();
  LogCoords out{a.sign, -a.r, std::vector<double>(a.u.size())};
  for (std::size_t j = 0; j < a.u.size(); ++j) out.u[j] = -std::exp(-a.r * mu[j]) * a.u[j];
  return out;
}

LogCoords log_identity(const ShearletGroup& group) {
  return LogCoords{1, 0.0, std::vector<double>(group.shear_dim(), 0.0)};
}

WordMetric::WordMetric(const ShearletGroup& group, double step)
    : group_(&group), step_(step), mu_(group.ad_scaling().begin(), group.ad_scaling().end()) {
  if (!(step > 0.0)) throw ConfigError("step must be positive");
}

bool WordMetric::in_unit_neighborhood(const LogCoords& g, double margin) const {
  if (g.sign != 1) return false;
  const double half = step_ + margin;
  if (std::abs(g.r) > half * (1 + 1e-12)) return false;
  for (std::size_t j = 0; j < g.u.size(); ++j) {
    const double bound = half * std::min(1.0, std::exp(mu_[j] * g.r));
    if (std::abs(g.u[j]) > bound * (1 + 1e-9) + 1e-300) return false;
  }
  return true;
}

std::optional<int> WordMetric::length(const LogCoords& g, int max_steps) const {
  // Reversing a path for g gives one for g^{-1} anchored at the other end,
  // so taking both keeps the estimate symmetric.
  const auto a = anchored_length(g, max_steps);
  const auto b = anchored_length(log_inverse(*group_, g), a ? std::min(*a, max_steps) : max_steps);
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::optional<int> WordMetric::distance(const LogCoords& a, const LogCoords& b, int max_steps) const {
  return length(log_mul(*group_, log_inverse(*group_, a), b), max_steps);
}

std::optional<int> WordMetric::anchored_length(const LogCoords& g, int max_steps) const {
  if (g.sign != 1 || !std::isfinite(g.r)) return std::nullopt;
  const std::size_t n = g.u.size();
  bool trivial = g.r == 0.0;
  for (double x : g.u) trivial = trivial && x == 0.0;
  if (trivial) return 0;
  if (max_steps <= 0) return std::nullopt;

  const double q = g.r / step_;
  if (std::abs(q) > max_steps + 1) return std::nullopt;
  const bool on_grid = std::abs(q - std::round(q)) < 1e-9;
  const long lo = on_grid ? std::lround(q) : static_cast<long>(std::floor(q));
  const long hi = on_grid ? std::lround(q) : static_cast<long>(std::ceil(q));
  const int frac = on_grid ? 0 : 1;

  // Heights k*step for k in [-K, K]; cap[j][k + K] is the capacity of the
  // step from k to k + 1, prefix[j] its running sum.
  const long K = max_steps + 1;
  const std::size_t span = static_cast<std::size_t>(2 * K + 1);
  std::vector<std::vector<double>> level(n, std::vector<double>(span));
  std::vector<std::vector<double>> prefix(n, std::vector<double>(span, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (long k = -K; k <= K; ++k) level[j][k + K] = std::exp(mu_[j] * step_ * static_cast<double>(k));
    for (long k = -K; k < K; ++k)
      prefix[j][k + K + 1] = prefix[j][k + K] + std::min(level[j][k + K], level[j][k + K + 1]);
  }
  std::vector<double> need(n), end_level(n);
  for (std::size_t j = 0; j < n; ++j) {
    need[j] = std::abs(g.u[j]) / step_ * (1 - 1e-9);
    end_level[j] = std::exp(mu_[j] * g.r);
  }
  auto climb = [&](std::size_t j, long a, long b) {
    if (a > b) std::swap(a, b);
    return prefix[j][b + K] - prefix[j][a + K];
  };

  int best = max_steps + 1;
  std::vector<double> deficit(n);

  // Given the base path through extremes `top` and `bottom`, add pauses there.
  auto settle = [&](long top, long bottom, int base) {
    int budget = best - 1 - base;
    if (budget < 0) return;
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) done = done && deficit[j] <= 0.0;
    if (done) {
      best = base;
      return;
    }
    for (int mt = 0; mt <= budget; ++mt) {
      int mb = 0;
      bool feasible = true;
      for (std::size_t j = 0; j < n && feasible; ++j) {
        const double rest = deficit[j] - mt * level[j][top + K];
        if (rest <= 0.0) continue;
        const double need_b = std::ceil(rest / level[j][bottom + K] - 1e-9);
        if (need_b > budget) feasible = false;
        mb = std::max(mb, static_cast<int>(need_b));
      }
      if (feasible && mt + mb <= budget) {
        best = base + mt + mb;
        budget = mt + mb - 1;
      }
      if (mt > budget) break;
    }
  };

  // 0 -> top -> bottom -> lo (-> rho): the path ends climbing.
  for (long top = 0; top <= K; ++top) {
    if (2 * top - std::min(0L, lo) >= best) break;
    for (long bottom = std::min(0L, lo); bottom >= -K; --bottom) {
      const long base_l = top + (top - bottom) + (lo - bottom) + frac;
      if (base_l >= best) break;
      for (std::size_t j = 0; j < n; ++j) {
        double c = climb(j, 0, top) + climb(j, bottom, top) + climb(j, bottom, lo);
        if (frac) c += std::min(level[j][lo + K], end_level[j]);
        deficit[j] = need[j] - c;
      }
      settle(top, bottom, static_cast<int>(base_l));
    }
  }
  // 0 -> bottom -> top -> hi (-> rho): the path ends descending.
  for (long bottom = 0; bottom >= -K; --bottom) {
    if (-2 * bottom + std::max(0L, hi) >= best) break;
    for (long top = std::max(0L, hi); top <= K; ++top) {
      const long base_l = -bottom + (top - bottom) + (top - hi) + frac;
      if (base_l >= best) break;
      for (std::size_t j = 0; j < n; ++j) {
        double c = climb(j, bottom, 0) + climb(j, bottom, top) + climb(j, hi, top);
        if (frac) c += std::min(level[j][hi + K], end_level[j]);
        deficit[j] = need[j] - c;
      }
      settle(top, bottom, static_cast<int>(base_l));
    }
  }
  if (best > max_steps) return std::nullopt;
  return best;
}

}  // namespace coorbitsym
