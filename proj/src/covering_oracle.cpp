#include <coorbitsym/covering_oracle.hpp>
#include <coorbitsym/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <span>
#include <unordered_map>

namespace coorbitsym {

void OracleConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("step must be positive");
  if (radius < 0) throw ConfigError("radius must be non-negative");
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (net_resolution < 2) throw ConfigError("net_resolution must be at least 2");
  if (!(growth_threshold >= 0.0)) throw ConfigError("growth_threshold must be non-negative");
  if (max_centers < 1) throw ConfigError("max_centers must be at least 1");
  for (int r : ladder)
    if (r < 1) throw ConfigError("ladder scales must be at least 1");
}

std::vector<int> OracleConfig::scales() const {
  std::vector<int> out = ladder;
  if (out.empty()) out = {radius / 2, (3 * radius) / 4, radius};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [](int r) { return r < 1; }), out.end());
  return out;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

// Cartesian grid of res points per axis in the box of half-width h around
// the identity (in r, and in u scaled by min(1, e^{mu r})).
std::vector<LogCoords> box_grid(const ShearletGroup& group, double h, int res) {
  const auto mu = group.ad_scaling();
  const std::size_t n = group.shear_dim();
  const auto axis = linspace(-1.0, 1.0, res);
  std::vector<LogCoords> out;
  for (double r : linspace(-h, h, res)) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      LogCoords g{1, r, std::vector<double>(n)};
      for (std::size_t j = 0; j < n; ++j) g.u[j] = axis[idx[j]] * h * std::min(1.0, std::exp(mu[j] * r));
      out.push_back(std::move(g));
      std::size_t j = 0;
      while (j < n && ++idx[j] == static_cast<std::size_t>(res)) idx[j++] = 0;
      if (j == n) break;
    }
  }
  return out;
}

bool is_identity(const LogCoords& g) {
  if (g.r != 0.0) return false;
  for (double x : g.u)
    if (x != 0.0) return false;
  return true;
}

struct CellHash {
  std::size_t operator()(const std::vector<long>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// Buckets points by r and by v = e^{-mu r} u. A left translate c W_H of the
// box of half-width H only reaches z when |r_z - r_c| <= H and
// |v_z - v_c| <= H e^{-mu r_z}, so the candidate scan stays local however
// far out in u the points sit.
class LeftIndex {
 public:
  LeftIndex(std::span<const double> mu, double half) : mu_(mu.begin(), mu.end()), half_(half) {}

  void insert(const LogCoords& g, std::size_t index) {
    const long k = level(g.r);
    std::vector<long> key{k};
    for (std::size_t j = 0; j < mu_.size(); ++j) key.push_back(cell(g, j, k));
    cells_[key].push_back(index);
  }

  template <typename F>
  void for_each_candidate(const LogCoords& z, F&& fn) const {
    const long kz = level(z.r);
    const std::size_t n = mu_.size();
    std::vector<long> lo(n), hi(n), key(n + 1);
    for (long k = kz - 1; k <= kz + 1; ++k) {
      key[0] = k;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = z.u[j] * std::exp(-mu_[j] * z.r);
        const double rho = half_ * std::exp(-mu_[j] * z.r) * (1 + 1e-9);
        const double w = width(j, k);
        lo[j] = static_cast<long>(std::floor((v - rho) / w));
        hi[j] = static_cast<long>(std::floor((v + rho) / w));
        key[j + 1] = lo[j];
      }
      while (true) {
        if (auto it = cells_.find(key); it != cells_.end())
          for (std::size_t idx : it->second) fn(idx);
        std::size_t j = 0;
        while (j < n && ++key[j + 1] > hi[j]) key[j + 1] = lo[j], ++j;
        if (j == n) break;
      }
    }
  }

 private:
  long level(double r) const { return static_cast<long>(std::floor(r / half_)); }
  double width(std::size_t j, long k) const { return half_ * std::exp(-mu_[j] * k * half_); }
  long cell(const LogCoords& g, std::size_t j, long k) const {
    return static_cast<long>(std::floor(g.u[j] * std::exp(-mu_[j] * g.r) / width(j, k)));
  }

  std::vector<double> mu_;
  double half_;
  std::unordered_map<std::vector<long>, std::vector<std::size_t>, CellHash> cells_;
};

class PhiMap {
 public:
  PhiMap(const ShearletGroup& group, const Eigen::MatrixXd& a) : group_(&group) {
    if (a.rows() != static_cast<Eigen::Index>(group.d()) || a.cols() != a.rows())
      throw DimensionError("matrix size does not match the group dimension");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw SingularMatrixError("matrix is singular");
    inv_t_ = lu.inverse().transpose();
  }

  GroupElementCoords operator()(const GroupElementCoords& h) const {
    const auto xi = orbit_map(*group_, h);
    const Eigen::VectorXd image = inv_t_ * Eigen::Map<const Eigen::VectorXd>(xi.data(), xi.size());
    if (std::abs(image(0)) <= 1e-14 * image.norm())
      throw OrbitError("orbit not preserved: image point has first coordinate 0");
    return orbit_map_inverse(*group_, std::vector<double>(image.data(), image.data() + image.size()));
  }

  // A^{-T} O = O iff the first row of A^{-T} is a multiple of e_1.
  bool preserves_orbit() const {
    return inv_t_.row(0).tail(inv_t_.cols() - 1).lpNorm<Eigen::Infinity>() <= 1e-12 * inv_t_.lpNorm<Eigen::Infinity>();
  }

  LogCoords operator()(const LogCoords& g) const {
    return to_log_coords(*group_, (*this)(from_log_coords(*group_, g)));
  }

 private:
  const ShearletGroup* group_;
  Eigen::MatrixXd inv_t_;
};

// All pairs (i, j) with phi(h_j U) meeting h_i U, up to the margin.
std::vector<std::pair<std::size_t, std::size_t>> intersection_relation(const ShearletGroup& group,
                                                                       const std::vector<BallCenter>& centers,
                                                                       double step, const PhiMap& phi,
                                                                       const PhiMap& phi_inv) {
  const double margin = step / 4;
  const WordMetric metric(group, step);
  const auto cloud_offsets = box_grid(group, step, 3);
  const std::size_t m = centers.size();

  LeftIndex index(metric.mu(), step + margin);
  for (std::size_t i = 0; i < m; ++i) index.insert(centers[i].g, i);

  std::set<std::pair<std::size_t, std::size_t>> relation;
  // Calls hit(k) for every center k whose h_k U^+ contains z.
  auto for_each_owner = [&](const LogCoords& z, auto&& hit) {
    index.for_each_candidate(z, [&](std::size_t k) {
      const LogCoords rel = log_mul(group, log_inverse(group, centers[k].g), z);
      if (metric.in_unit_neighborhood(rel, margin)) hit(k);
    });
  };

  for (std::size_t s = 0; s < m; ++s) {
    for (const auto& w : cloud_offsets) {
      const LogCoords x = log_mul(group, centers[s].g, w);
      // phi(x) in h_i U^+  =>  (i, s) related.
      try {
        const LogCoords image = phi(x);
        if (image.sign == 1) for_each_owner(image, [&](std::size_t i) { relation.emplace(i, s); });
      } catch (const OrbitError&) {
      }
      // phi^{-1}(x) in h_j U^+  =>  (s, j) related.
      try {
        const LogCoords pre = phi_inv(x);
        if (pre.sign == 1) for_each_owner(pre, [&](std::size_t j) { relation.emplace(s, j); });
      } catch (const OrbitError&) {
      }
    }
  }
  return {relation.begin(), relation.end()};
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint64_t out = 0;
  std::vector<std::uint32_t> v(2);
  seq.generate(v.begin(), v.end());
  out = (static_cast<std::uint64_t>(v[0]) << 32) | v[1];
  return out;
}

LogCoords random_unit_element(const ShearletGroup& group, double step, std::mt19937_64& rng) {
  const auto mu = group.ad_scaling();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  LogCoords g{1, step * unit(rng), std::vector<double>(group.shear_dim())};
  for (std::size_t j = 0; j < g.u.size(); ++j) g.u[j] = step * std::min(1.0, std::exp(mu[j] * g.r)) * unit(rng);
  return g;
}

// A point of the identity component with word length at most R. Heights
// are stratified over the levels k*step, |k| <= R, so the top and bottom of
// the ball are sampled as often as the middle; u is drawn log-uniformly and
// rejected until the point fits in the ball.
LogCoords sample_in_ball(const ShearletGroup& group, const WordMetric& metric, int R, std::mt19937_64& rng) {
  const double step = metric.step();
  const auto mu = metric.mu();
  const double height = R * step;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int level = std::uniform_int_distribution<int>(-R, R)(rng);
  LogCoords g{1, level * step, std::vector<double>(group.shear_dim(), 0.0)};
  for (int attempt = 0; attempt < 32; ++attempt) {
    for (std::size_t j = 0; j < g.u.size(); ++j) {
      const double lo = std::log(0.05 * step);
      const double hi = std::log(step * R) + std::abs(mu[j]) * height;
      g.u[j] = (unit(rng) < 0.5 ? -1 : 1) * std::exp(lo + (hi - lo) * unit(rng));
    }
    if (metric.length(g, R)) return g;
  }
  std::fill(g.u.begin(), g.u.end(), 0.0);
  return g;
}

}  // namespace

std::vector<LogCoords> unit_net(const ShearletGroup& group, const OracleConfig& config) {
  config.validate();
  return box_grid(group, config.step, config.net_resolution);
}

CoveringSample word_ball(const ShearletGroup& group, const OracleConfig& config) {
  config.validate();
  CoveringSample sample;
  sample.base_half_width = config.step;
  std::vector<LogCoords> generators;
  for (auto& g : unit_net(group, config))
    if (!is_identity(g)) generators.push_back(std::move(g));

  // Centers are kept left-separated: x is dropped when c^{-1} x lies in the
  // half-size box for some earlier center c.
  const WordMetric metric(group, config.step);
  LeftIndex grid(metric.mu(), config.step / 2);
  auto has_close = [&](const LogCoords& x) {
    bool close = false;
    grid.for_each_candidate(x, [&](std::size_t k) {
      if (!close)
        close = metric.in_unit_neighborhood(log_mul(group, log_inverse(group, sample.centers[k].g), x),
                                            -config.step / 2);
    });
    return close;
  };
  sample.centers.push_back(BallCenter{log_identity(group), 0});
  grid.insert(sample.centers[0].g, 0);
  std::size_t frontier_begin = 0;
  for (int depth = 1; depth <= config.radius && !sample.truncated; ++depth) {
    const std::size_t frontier_end = sample.centers.size();
    for (std::size_t c = frontier_begin; c < frontier_end && !sample.truncated; ++c) {
      for (const auto& w : generators) {
        LogCoords x = log_mul(group, sample.centers[c].g, w);
        if (has_close(x)) continue;
        if (sample.centers.size() >= config.max_centers) {
          sample.truncated = true;
          break;
        }
        grid.insert(x, sample.centers.size());
        sample.centers.push_back(BallCenter{std::move(x), depth});
      }
    }
    frontier_begin = frontier_end;
  }

  if (config.build_graph) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(group.d(), group.d());
    const PhiMap phi(group, id);
    const auto relation = intersection_relation(group, sample.centers, config.step, phi, phi);
    std::vector<std::set<std::size_t>> adj(sample.centers.size());
    for (std::size_t i = 0; i < adj.size(); ++i) adj[i].insert(i);
    for (const auto& [i, j] : relation) {
      adj[i].insert(j);
      adj[j].insert(i);
    }
    for (const auto& s : adj) sample.intersection_graph.emplace_back(s.begin(), s.end());
  }
  return sample;
}

std::optional<int> word_distance_estimate(const ShearletGroup& group, const OracleConfig& config,
                                          const GroupElementCoords& g1, const GroupElementCoords& g2) {
  config.validate();
  if (g1.sign != g2.sign) return std::nullopt;
  const WordMetric metric(group, config.step);
  return metric.distance(to_log_coords(group, g1), to_log_coords(group, g2), 4 * config.radius);
}

GroupElementCoords phi_A(const ShearletGroup& group, const Eigen::MatrixXd& a, const GroupElementCoords& h) {
  return PhiMap(group, a)(h);
}

LogCoords phi_A(const ShearletGroup& group, const Eigen::MatrixXd& a, const LogCoords& h) {
  return PhiMap(group, a)(h);
}

DistortionReport distortion_scan(const ShearletGroup& group, const OracleConfig& config, const Eigen::MatrixXd& a) {
  config.validate();
  if (config.radius < 1) throw ConfigError("radius must be at least 1");
  const PhiMap phi(group, a);
  if (!phi.preserves_orbit()) throw OrbitError("orbit not preserved: A^{-T} does not map O onto O");
  const WordMetric metric(group, config.step);
  const int cap = 8 * config.radius;

  DistortionReport report;
  report.config = config;
  for (int R : config.scales()) {
    ScaleResult result;
    result.R = R;
    std::vector<double> xs, ys;
    for (int k = 0; k < config.samples; ++k) {
      std::mt19937_64 rng(mix(config.seed, static_cast<std::uint64_t>(R), static_cast<std::uint64_t>(k)));
      const LogCoords g1 = sample_in_ball(group, metric, R, rng);
      LogCoords g2;
      if (k % 2 == 0) {
        g2 = g1;
        const int m = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < m; ++i) g2 = log_mul(group, g2, random_unit_element(group, config.step, rng));
      } else {
        g2 = sample_in_ball(group, metric, R, rng);
      }
      const LogCoords i1 = phi(g1);
      const LogCoords i2 = phi(g2);
      if (i1.sign != i2.sign) throw OrbitError("orbit not preserved: A^{-T} splits a sheet of O");

      const auto dx = metric.distance(g1, g2, cap);
      auto dy = metric.distance(i1, i2, cap);
      const double x = dx ? *dx : cap + 1;
      if (!dy) ++result.capped_pairs;
      const double y = dy ? *dy : cap + 1;
      if (x == 0 && y == 0) continue;
      const double ratio = std::max(y / std::max(x, 1.0), x / std::max(y, 1.0));
      result.max_ratio = std::max(result.max_ratio, ratio);
      xs.push_back(x);
      ys.push_back(y);
    }
    result.pairs = static_cast<int>(xs.size());
    if (!xs.empty()) {
      const double n = static_cast<double>(xs.size());
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
      }
      double sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
      }
      result.L = sxx > 0 ? sxy / sxx : (mx > 0 ? my / mx : 0.0);
      result.C = my - result.L * mx;
    }
    report.per_scale.push_back(result);
  }
  for (std::size_t s = 1; s < report.per_scale.size(); ++s) {
    if (report.per_scale[s].max_ratio > (1 + config.growth_threshold) * report.per_scale[s - 1].max_ratio)
      report.monotone_growth_flag = true;
  }
  return report;
}

WeakEquivalenceCounts weak_equivalence_count(const ShearletGroup& group, const OracleConfig& config,
                                             const Eigen::MatrixXd& a) {
  config.validate();
  const PhiMap phi(group, a);
  const PhiMap phi_inv(group, a.inverse());
  OracleConfig ball_config = config;
  ball_config.build_graph = false;
  const CoveringSample ball = word_ball(group, ball_config);
  const auto relation = intersection_relation(group, ball.centers, config.step, phi, phi_inv);

  std::vector<int> row(ball.centers.size(), 0), col(ball.centers.size(), 0);
  for (const auto& [i, j] : relation) {
    ++row[i];
    ++col[j];
  }
  WeakEquivalenceCounts counts;
  counts.N_QP = row.empty() ? 0 : *std::max_element(row.begin(), row.end());
  counts.N_PQ = col.empty() ? 0 : *std::max_element(col.begin(), col.end());
  counts.centers = ball.centers.size();
  counts.truncated = ball.truncated;
  return counts;
}

}  // namespace coorbitsym
