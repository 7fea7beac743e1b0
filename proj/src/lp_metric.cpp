#include "qmdisc/lp_metric.hpp"

#include "qmdisc/errors.hpp"
#include "qmdisc/parallel.hpp"
#include "qmdisc/rng.hpp"

#include <cmath>
#include <numbers>

namespace qmdisc {

Isotopy flow_isotopy(const FlowSpec& spec) {
  return [spec](double t, Point x) {
    const double a = t * spec.angle_increment(x.norm2());
    const double c = std::cos(a);
    const double s = std::sin(a);
    return Point{c * x.x - s * x.y, s * x.x + c * x.y};
  };
}

namespace {

constexpr std::size_t kChunk = 1024;

struct Moments {
  double mean = 0;      // of |v|^p
  double variance = 0;  // sample variance of |v|^p
};

// Mean and variance of |v|^p over the points at time t, reduced in a fixed
// chunk order so the result does not depend on the worker count.
Moments velocity_moments(const Isotopy& g, const std::vector<Point>& points, double t, double p,
                         double h, unsigned threads) {
  const std::size_t chunks = (points.size() + kChunk - 1) / kChunk;
  std::vector<double> s1(chunks), s2(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    double a = 0;
    double b = 0;
    const std::size_t end = std::min(points.size(), (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < end; ++j) {
      const Point x = points[j];
      Point v;
      if (t - h < 0) {
        const Point g0 = g(t, x);
        v = (1 / (2 * h)) * (4.0 * (g(t + h, x) - g0) - (g(t + 2 * h, x) - g0));
      } else if (t + h > 1) {
        const Point g0 = g(t, x);
        v = (1 / (2 * h)) * (4.0 * (g0 - g(t - h, x)) - (g0 - g(t - 2 * h, x)));
      } else {
        v = (1 / (2 * h)) * (g(t + h, x) - g(t - h, x));
      }
      const double f = std::pow(std::sqrt(v.norm2()), p);
      a += f;
      b += f * f;
    }
    s1[c] = a;
    s2[c] = b;
  });
  double a = 0;
  double b = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    a += s1[c];
    b += s2[c];
  }
  const double n = static_cast<double>(points.size());
  Moments m;
  m.mean = a / n;
  m.variance = n > 1 ? std::max(0.0, (b - n * m.mean * m.mean) / (n - 1)) : 0.0;
  return m;
}

}  // namespace

LpLength lp_length_sampled(const Isotopy& isotopy, double p, int time_steps, long space_samples,
                           std::uint64_t seed, const LpOptions& options) {
  if (!(p >= 1)) throw InputError("p must be at least 1");
  if (time_steps < 2) throw InputError("time_steps must be at least 2");
  if (space_samples < 1) throw InputError("space_samples must be positive");

  std::vector<Point> points(static_cast<std::size_t>(space_samples));
  for (std::size_t j = 0; j < points.size(); ++j) {
    SplitMix64 rng(derive_seed(seed, streams::kLpSpace, j));
    const double r = std::sqrt(rng.uniform());
    const double a = 2 * std::numbers::pi * rng.uniform();
    points[j] = {r * std::cos(a), r * std::sin(a)};
  }
  const double n = static_cast<double>(points.size());
  const double area = std::numbers::pi;

  // Per-node L_t = (pi mean)^(1/p) and its delta-method error; nodes of a
  // grid are reused by its refinement.
  std::vector<double> node_value;
  std::vector<double> node_error;
  auto evaluate = [&](double t, double& value, double& error) {
    const Moments m = velocity_moments(isotopy, points, t, p, options.difference_step, options.threads);
    const double inner = area * m.mean;
    value = std::pow(inner, 1 / p);
    error = inner > 0 ? value / (p * inner) * area * std::sqrt(m.variance / n) : 0.0;
  };
  auto integrate = [&](int steps) {
    double v = 0;
    double e = 0;
    for (int k = 0; k <= steps; ++k) {
      const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
      v += w * node_value[k];
      e += w * node_error[k];  // errors at different times are correlated
    }
    return std::pair{v / steps, e / steps};
  };

  int steps = time_steps;
  node_value.resize(steps + 1);
  node_error.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    evaluate(static_cast<double>(k) / steps, node_value[k], node_error[k]);
  }
  auto [value, error] = integrate(steps);
  LpLength out;
  for (int d = 0; d < options.max_doublings; ++d) {
    std::vector<double> fine_value(2 * steps + 1), fine_error(2 * steps + 1);
    for (int k = 0; k <= 2 * steps; ++k) {
      if (k % 2 == 0) {
        fine_value[k] = node_value[k / 2];
        fine_error[k] = node_error[k / 2];
      } else {
        evaluate(static_cast<double>(k) / (2 * steps), fine_value[k], fine_error[k]);
      }
    }
    node_value.swap(fine_value);
    node_error.swap(fine_error);
    steps *= 2;
    const auto [v2, e2] = integrate(steps);
    out.refinement_change = v2 == value ? 0.0 : std::abs(v2 - value) / std::max(std::abs(v2), 1e-300);
    value = v2;
    error = e2;
    if (out.refinement_change < options.refinement_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.value = value;
  out.std_error = error;
  out.time_steps = steps;
  return out;
}

LpLength lp_length_trajectory(const TrajectoryBundle& bundle, double p) {
  if (!(p >= 1)) throw InputError("p must be at least 1");
  const std::size_t m = bundle.samples();
  if (m < 2) throw InputError("trajectory needs at least two samples");
  const auto& t = bundle.times();
  const double strands = bundle.strands();
  std::vector<double> node_value(m), node_error(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == m ? k : k + 1;
    double a = 0;
    double b = 0;
    for (int i = 0; i < bundle.strands(); ++i) {
      const Point v = (1 / (t[hi] - t[lo])) * (bundle.at(hi)[i] - bundle.at(lo)[i]);
      const double f = std::pow(std::sqrt(v.norm2()), p);
      a += f;
      b += f * f;
    }
    const double mean = a / strands;
    const double var = strands > 1 ? std::max(0.0, (b - strands * mean * mean) / (strands - 1)) : 0.0;
    const double inner = std::numbers::pi * mean;
    node_value[k] = std::pow(inner, 1 / p);
    node_error[k] =
        inner > 0 ? node_value[k] / (p * inner) * std::numbers::pi * std::sqrt(var / strands) : 0.0;
  }
  LpLength out;
  for (std::size_t k = 1; k < m; ++k) {
    const double w = 0.5 * (t[k] - t[k - 1]);
    out.value += w * (node_value[k] + node_value[k - 1]);
    out.std_error += w * (node_error[k] + node_error[k - 1]);
  }
  out.time_steps = static_cast<int>(m - 1);
  return out;
}

double holder_constant(double p) {
  if (!(p >= 1)) throw InputError("p must be at least 1");
  return std::pow(std::numbers::pi, 1 / p - 1);
}

}  // namespace qmdisc
