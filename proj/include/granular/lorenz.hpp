#ifndef GRANULAR_LORENZ_HPP
#define GRANULAR_LORENZ_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "granular/errors.hpp"
#include "granular/sequence.hpp"

namespace granular {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// The X equation is selectable: `standard` is dX/dt = sigma(Y - X);
/// `as_printed` drops sigma from the Y term, dX/dt = -sigma X + Y.  The Y
/// and Z equations are the same in both.
enum class LorenzForm { standard, as_printed };

struct LorenzParams {
  double sigma = 10.0;
  double r = 28.0;
  double b = 8.0 / 3.0;
  double dt = 0.005;
  LorenzForm form = LorenzForm::standard;

  void check() const {
    if (!(sigma > 0.0) || !(r > 0.0) || !(b > 0.0) || !(dt > 0.0))
      throw std::invalid_argument("lorenz: parameters must be positive");
  }
};

inline Vec3 lorenz_rhs(const LorenzParams& p, const Vec3& v) {
  double dx = p.form == LorenzForm::standard ? p.sigma * (v.y - v.x)
                                             : -p.sigma * v.x + v.y;
  return {dx, -v.x * v.z + p.r * v.x - v.y, v.x * v.y - p.b * v.z};
}

/// Divergence of the flow field; constant in state for both forms.
inline double flow_divergence(const LorenzParams& p) {
  return -(p.sigma + 1.0 + p.b);
}

inline Vec3 rk4_step(const LorenzParams& p, const Vec3& v) {
  double h = p.dt;
  Vec3 k1 = lorenz_rhs(p, v);
  Vec3 k2 = lorenz_rhs(p, v + (h / 2) * k1);
  Vec3 k3 = lorenz_rhs(p, v + (h / 2) * k2);
  Vec3 k4 = lorenz_rhs(p, v + h * k3);
  return v + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

inline Vec3 advance(const LorenzParams& p, Vec3 v, std::size_t steps,
                    std::size_t step_offset = 0) {
  for (std::size_t i = 0; i < steps; ++i) {
    v = rk4_step(p, v);
    if (!v.finite())
      throw divergence_error("lorenz: state no longer finite",
                             step_offset + i + 1);
  }
  return v;
}

} // namespace detail

/// Fixed-step RK4 trajectory of steps+1 states, starting state included.
inline std::vector<Vec3> integrate(const LorenzParams& p, Vec3 start,
                                   std::size_t steps) {
  p.check();
  if (!start.finite())
    throw std::invalid_argument("integrate: start must be finite");
  std::vector<Vec3> traj;
  traj.reserve(steps + 1);
  traj.push_back(start);
  Vec3 v = start;
  for (std::size_t i = 0; i < steps; ++i) {
    v = rk4_step(p, v);
    if (!v.finite())
      throw divergence_error("lorenz: state no longer finite", i + 1);
    traj.push_back(v);
  }
  return traj;
}

/// Points on the attractor: a seeded start, a spin-up that is discarded,
/// then `count` states sampled every `sample_interval` time units.
inline std::vector<Vec3> attractor_sample(const LorenzParams& p,
                                          std::size_t count,
                                          double spinup_time,
                                          std::uint64_t seed,
                                          double sample_interval = 0.25) {
  p.check();
  if (count < 1) throw std::invalid_argument("attractor_sample: count >= 1");
  if (!(sample_interval > 0.0))
    throw std::invalid_argument("attractor_sample: interval must be > 0");
  SplitMix64 rng(seed);
  Vec3 v{-10.0 + 20.0 * rng.uniform01(), -15.0 + 30.0 * rng.uniform01(),
         5.0 + 30.0 * rng.uniform01()};
  std::size_t spin_steps =
      static_cast<std::size_t>(std::ceil(spinup_time / p.dt));
  v = detail::advance(p, v, spin_steps);
  std::size_t gap = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(sample_interval / p.dt)));
  std::vector<Vec3> sample;
  sample.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    sample.push_back(v);
    v = detail::advance(p, v, gap, spin_steps + i * gap);
  }
  return sample;
}

namespace detail {

// Uniform voxel hash over a point set; nearest-neighbour queries search
// expanding shells of cells until a hit is confirmed.
class NnGrid {
public:
  NnGrid(const std::vector<Vec3>& points, double cell)
      : points_(points), cell_(cell) {
    for (std::size_t i = 0; i < points.size(); ++i)
      cells_[cell_key(points[i])].push_back(static_cast<std::uint32_t>(i));
  }

  double nearest_distance(const Vec3& q) const {
    double best2 = std::numeric_limits<double>::infinity();
    long qi = coord(q.x), qj = coord(q.y), qk = coord(q.z);
    for (long radius = 0;; ++radius) {
      bool scanned_any = scan_shell(q, qi, qj, qk, radius, best2);
      // A confirmed hit needs one shell beyond the radius containing it.
      double safe = static_cast<double>(radius) * cell_;
      if (best2 < safe * safe) break;
      if (!scanned_any && radius > max_radius_) {
        // far outside the populated region; scan everything once
        for (const Vec3& pt : points_) {
          double d2 = (pt - q).norm2();
          if (d2 < best2) best2 = d2;
        }
        break;
      }
    }
    return std::sqrt(best2);
  }

private:
  long coord(double v) const { return static_cast<long>(std::floor(v / cell_)); }

  std::uint64_t cell_key(const Vec3& v) const {
    return pack(coord(v.x), coord(v.y), coord(v.z));
  }

  static std::uint64_t pack(long i, long j, long k) {
    auto u = [](long t) {
      return static_cast<std::uint64_t>(t + (1l << 20)) & 0x1fffffull;
    };
    return (u(i) << 42) | (u(j) << 21) | u(k);
  }

  bool scan_shell(const Vec3& q, long qi, long qj, long qk, long radius,
                  double& best2) const {
    bool any = false;
    for (long di = -radius; di <= radius; ++di)
      for (long dj = -radius; dj <= radius; ++dj)
        for (long dk = -radius; dk <= radius; ++dk) {
          if (std::max({std::labs(di), std::labs(dj), std::labs(dk)}) !=
              radius)
            continue;
          auto it = cells_.find(pack(qi + di, qj + dj, qk + dk));
          if (it == cells_.end()) continue;
          any = true;
          for (std::uint32_t idx : it->second) {
            double d2 = (points_[idx] - q).norm2();
            if (d2 < best2) best2 = d2;
          }
        }
    return any;
  }

  const std::vector<Vec3>& points_;
  double cell_;
  long max_radius_ = 256;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

} // namespace detail

struct CounterfactualConfig {
  std::vector<double> deltas{0.01, 0.1, 1.0};
  double horizon = 1.0;              // time units of paired integration
  std::size_t trajectory_subset = 512;
  std::size_t baseline_count = 10000;
  double sample_interval = 0.25;     // used to generate fresh baseline points
  double nn_cell = 1.0;
};

struct DeltaStats {
  double delta = 0.0;
  double median_nn = 0.0;
  double mean_nn = 0.0;
  double rms_end = 0.0;
  std::vector<double> rms_separation;  // one entry per step over the horizon
};

struct CounterfactualReport {
  double baseline_median_nn = 0.0;  // fresh on-attractor points vs the sample
  std::vector<DeltaStats> per_delta;
};

/// Perturbs X alone on every sampled state and measures how far the result
/// sits from the attractor sample (nearest neighbour), against the distance
/// fresh unperturbed points show; also tracks the separation of the
/// perturbed trajectory from the original over the horizon.
inline CounterfactualReport counterfactual_experiment(
    const LorenzParams& p, const std::vector<Vec3>& sample,
    const CounterfactualConfig& cfg = {}) {
  p.check();
  if (sample.empty())
    throw std::invalid_argument("counterfactual_experiment: empty sample");

  detail::NnGrid grid(sample, cfg.nn_cell);

  CounterfactualReport report;
  {
    // fresh on-attractor points: continue the flow beyond the last sample
    std::vector<double> base_nn;
    std::size_t gap = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.sample_interval / p.dt)));
    Vec3 v = sample.back();
    for (std::size_t i = 0; i < cfg.baseline_count; ++i) {
      v = detail::advance(p, v, gap);
      base_nn.push_back(grid.nearest_distance(v));
    }
    report.baseline_median_nn = detail::median(std::move(base_nn));
  }

  std::size_t horizon_steps =
      static_cast<std::size_t>(std::llround(cfg.horizon / p.dt));
  std::size_t subset = std::min(cfg.trajectory_subset, sample.size());

  for (double delta : cfg.deltas) {
    DeltaStats stats;
    stats.delta = delta;

    std::vector<double> nn;
    nn.reserve(sample.size());
    double sum = 0.0;
    for (const Vec3& s : sample) {
      Vec3 q{s.x + delta, s.y, s.z};
      double d = grid.nearest_distance(q);
      nn.push_back(d);
      sum += d;
    }
    stats.mean_nn = sum / static_cast<double>(sample.size());
    stats.median_nn = detail::median(std::move(nn));

    // paired trajectories, aggregated in sample order
    std::vector<double> sep2(horizon_steps + 1, 0.0);
    for (std::size_t j = 0; j < subset; ++j) {
      Vec3 a = sample[j];
      Vec3 b{a.x + delta, a.y, a.z};
      sep2[0] += (a - b).norm2();
      for (std::size_t t = 1; t <= horizon_steps; ++t) {
        a = rk4_step(p, a);
        b = rk4_step(p, b);
        if (!a.finite() || !b.finite())
          throw divergence_error("counterfactual: trajectory diverged", t);
        sep2[t] += (a - b).norm2();
      }
    }
    stats.rms_separation.resize(sep2.size());
    for (std::size_t t = 0; t < sep2.size(); ++t)
      stats.rms_separation[t] =
          std::sqrt(sep2[t] / static_cast<double>(subset));
    stats.rms_end = stats.rms_separation.back();
    report.per_delta.push_back(std::move(stats));
  }
  return report;
}

/// Largest Lyapunov exponent by two-trajectory renormalization: a companion
/// displaced by d0 is rescaled back to d0 every step and the log stretch
/// factors accumulate.
inline double lyapunov_estimate(const LorenzParams& p, double duration,
                                std::uint64_t seed) {
  p.check();
  if (!(duration > 0.0))
    throw std::invalid_argument("lyapunov_estimate: duration must be > 0");
  const double d0 = 1e-8;
  const double spinup = 10.0;

  SplitMix64 rng(seed);
  Vec3 v{-10.0 + 20.0 * rng.uniform01(), -15.0 + 30.0 * rng.uniform01(),
         5.0 + 30.0 * rng.uniform01()};
  v = detail::advance(p, v, static_cast<std::size_t>(spinup / p.dt));

  // random unit direction for the companion
  Vec3 dir{rng.uniform01() - 0.5, rng.uniform01() - 0.5,
           rng.uniform01() - 0.5};
  double dn = dir.norm();
  if (dn == 0.0) dir = {1.0, 0.0, 0.0}; else dir = (1.0 / dn) * dir;
  Vec3 w = v + d0 * dir;

  std::size_t steps = static_cast<std::size_t>(duration / p.dt);
  double acc = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    v = rk4_step(p, v);
    w = rk4_step(p, w);
    if (!v.finite() || !w.finite())
      throw divergence_error("lyapunov: state no longer finite", i + 1);
    Vec3 d = w - v;
    double dist = d.norm();
    acc += std::log(dist / d0);
    w = v + (d0 / dist) * d;
  }
  return acc / (static_cast<double>(steps) * p.dt);
}

} // namespace granular

#endif // GRANULAR_LORENZ_HPP
