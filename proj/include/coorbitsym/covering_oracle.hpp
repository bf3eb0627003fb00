#pragma once

#include <coorbitsym/word_metric.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace coorbitsym {

struct OracleConfig {
  double step = 0.25;          // half-width of W in r and (at r = 0) in u
  int radius = 12;
  int samples = 400;
  std::uint64_t seed = 42;
  int net_resolution = 3;      // points per axis of the W-net
  double growth_threshold = 0.5;
  std::vector<int> ladder;     // empty: radius/2, 3*radius/4, radius
  std::size_t max_centers = 3000;
  bool build_graph = false;    // word_ball: fill intersection_graph

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
  std::vector<int> scales() const;
};

struct BallCenter {
  LogCoords g;
  int depth = 0;
};

struct CoveringSample {
  std::vector<BallCenter> centers;
  double base_half_width = 0.0;  // U = W for this step
  bool truncated = false;        // max_centers reached before the full radius
  std::vector<std::vector<std::size_t>> intersection_graph;
};

/// Finite symmetric net of W: net_resolution points per axis, identity included
/// when the resolution is odd.
std::vector<LogCoords> unit_net(const ShearletGroup& group, const OracleConfig& config);

/// Breadth-first search from the identity over the net, up to depth
/// config.radius, discarding a candidate within step/2 (max norm in (r, u)) of
/// an existing center.
CoveringSample word_ball(const ShearletGroup& group, const OracleConfig& config);

/// nullopt means infinite: different components, or longer than 4 * radius.
std::optional<int> word_distance_estimate(const ShearletGroup& group, const OracleConfig& config,
                                          const GroupElementCoords& g1, const GroupElementCoords& g2);

/// p^{-1}(A^{-T} p(h)). Throws OrbitError when the image leaves O.
GroupElementCoords phi_A(const ShearletGroup& group, const Eigen::MatrixXd& a, const GroupElementCoords& h);
LogCoords phi_A(const ShearletGroup& group, const Eigen::MatrixXd& a, const LogCoords& h);

struct ScaleResult {
  int R = 0;
  double max_ratio = 0.0;
  double L = 0.0;
  double C = 0.0;
  int pairs = 0;
  int capped_pairs = 0;  // image distance beyond the search cap
};

struct DistortionReport {
  std::vector<ScaleResult> per_scale;
  bool monotone_growth_flag = false;
  OracleConfig config;
};

/// Throws OrbitError ("orbit not preserved") when A^{-T} does not map the
/// sampled part of O into a single sheet.
DistortionReport distortion_scan(const ShearletGroup& group, const OracleConfig& config, const Eigen::MatrixXd& a);

struct WeakEquivalenceCounts {
  int N_QP = 0;
  int N_PQ = 0;
  std::size_t centers = 0;
  bool truncated = false;
};

/// Q_i = p(h_i U) from word_ball, P_i = A^{-T} Q_i. N_QP is the largest number
/// of P-sets meeting one Q-set, N_PQ the converse.
WeakEquivalenceCounts weak_equivalence_count(const ShearletGroup& group, const OracleConfig& config,
                                             const Eigen::MatrixXd& a);

}  // namespace coorbitsym
