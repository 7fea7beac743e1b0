#include "qmdisc/gg_estimator.hpp"

#include "qmdisc/errors.hpp"
#include "qmdisc/parallel.hpp"
#include "qmdisc/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace qmdisc {

unsigned default_thread_count() {
  if (const char* env = std::getenv("QMDISC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::vector<Point> resolve_base(const std::vector<Point>& base, int n) {
  if (base.empty()) return regular_polygon(n, 0.5);
  if (static_cast<int>(base.size()) != n) throw InputError("base must have n points");
  return base;
}

std::vector<Point> draw_configuration(std::uint64_t seed, std::size_t index, int n) {
  SplitMix64 rng(derive_seed(seed, streams::kConfigurations, index));
  std::vector<Point> x(n);
  for (auto& p : x) {
    const double r = std::sqrt(rng.uniform());
    const double a = 2 * std::numbers::pi * rng.uniform();
    p = {r * std::cos(a), r * std::sin(a)};
  }
  return x;
}

double min_separation(const std::vector<Point>& x) {
  double best = INFINITY;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::min(best, (x[i] - x[j]).norm2());
  }
  return std::sqrt(best);
}

}  // namespace

std::optional<std::vector<double>> configuration_values(const std::vector<FlowSpec>& flows,
                                                        const QuasimorphismSpec& phi,
                                                        const std::vector<Point>& base,
                                                        const std::vector<Point>& x,
                                                        const EstimatorOptions& options) {
  if (x.size() >= 2 && min_separation(x) < options.min_separation) return std::nullopt;
  std::vector<double> values;
  values.reserve(flows.size());
  for (const auto& flow : flows) {
    try {
      const auto bundle = gg_loop(base, x, flow, options.samples_per_segment, options.max_step_angle);
      const auto found = extract_braid_robust(bundle, options.direction, options.direction_attempts);
      values.push_back(to_double(phi.evaluate(found.word)));
    } catch (const DegenerateConfiguration&) {
      return std::nullopt;
    }
  }
  return values;
}

std::vector<QmEstimate> estimate_phi_n_batch(const std::vector<FlowSpec>& flows,
                                             const QuasimorphismSpec& phi, int n,
                                             const std::vector<Point>& base, long samples,
                                             std::uint64_t seed, const EstimatorOptions& options) {
  if (n < 2) throw InputError("n must be at least 2");
  if (samples < 1) throw InputError("samples must be positive");
  const auto z = resolve_base(base, n);
  const std::size_t m = flows.size();

  std::vector<std::optional<std::vector<double>>> rows(static_cast<std::size_t>(samples));
  parallel_for(rows.size(), options.threads, [&](std::size_t i) {
    rows[i] = configuration_values(flows, phi, z, draw_configuration(seed, i, n), options);
  });

  long accepted = 0;
  std::vector<double> sum(m, 0.0);
  for (const auto& row : rows) {
    if (!row) continue;
    ++accepted;
    for (std::size_t f = 0; f < m; ++f) sum[f] += (*row)[f];
  }
  const long rejected = samples - accepted;
  if (2 * rejected > samples) {
    throw DegenerateConfiguration("more than half of the configurations are degenerate", 0.0);
  }
  const double volume = std::pow(std::numbers::pi, n);
  std::vector<QmEstimate> out(m);
  for (std::size_t f = 0; f < m; ++f) {
    const double mean = sum[f] / static_cast<double>(accepted);
    double squares = 0;
    for (const auto& row : rows) {
      if (row) squares += ((*row)[f] - mean) * ((*row)[f] - mean);
    }
    const double sd = accepted > 1 ? std::sqrt(squares / static_cast<double>(accepted - 1)) : 0.0;
    QmEstimate& e = out[f];
    e.value = volume * mean;
    e.std_error = volume * sd / std::sqrt(static_cast<double>(accepted));
    e.samples = accepted;
    e.rejected = rejected;
    e.seed = seed;
    e.k_schedule = {1};
    e.k_values = {e.value};
    e.k_errors = {e.std_error};
  }
  return out;
}

QmEstimate estimate_phi_n(const FlowSpec& flow, const QuasimorphismSpec& phi, int n,
                          const std::vector<Point>& base, long samples, std::uint64_t seed,
                          const EstimatorOptions& options) {
  return estimate_phi_n_batch({flow}, phi, n, base, samples, seed, options).front();
}

std::vector<QmEstimate> estimate_phi_tilde_n_batch(const std::vector<FlowSpec>& flows,
                                                   const QuasimorphismSpec& phi, int n,
                                                   const std::vector<Point>& base, long samples,
                                                   const std::vector<long>& k_schedule,
                                                   std::uint64_t seed,
                                                   const EstimatorOptions& options) {
  if (k_schedule.empty()) throw InputError("k_schedule must not be empty");
  for (std::size_t i = 0; i < k_schedule.size(); ++i) {
    if (k_schedule[i] < 1 || (i > 0 && k_schedule[i] <= k_schedule[i - 1])) {
      throw InputError("k_schedule must be increasing positive integers");
    }
  }
  const std::size_t kn = k_schedule.size();
  std::vector<FlowSpec> powered;
  for (const auto& flow : flows) {
    for (long k : k_schedule) powered.push_back(flow.scaled(static_cast<double>(k)));
  }
  const auto raw = estimate_phi_n_batch(powered, phi, n, base, samples, seed, options);

  std::vector<QmEstimate> out(flows.size());
  for (std::size_t f = 0; f < flows.size(); ++f) {
    QmEstimate& e = out[f];
    e.seed = seed;
    e.k_schedule = k_schedule;
    for (std::size_t j = 0; j < kn; ++j) {
      const auto& r = raw[f * kn + j];
      const double k = static_cast<double>(k_schedule[j]);
      e.k_values.push_back(r.value / k);
      e.k_errors.push_back(r.std_error / k);
      e.samples = r.samples;
      e.rejected = r.rejected;
    }
    e.value = e.k_values.back();
    e.cauchy_error = kn > 1 ? std::abs(e.k_values[kn - 1] - e.k_values[kn - 2]) : 0.0;
    e.std_error = e.k_errors.back() + e.cauchy_error;
  }
  return out;
}

QmEstimate estimate_phi_tilde_n(const FlowSpec& flow, const QuasimorphismSpec& phi, int n,
                                const std::vector<Point>& base, long samples,
                                const std::vector<long>& k_schedule, std::uint64_t seed,
                                const EstimatorOptions& options) {
  return estimate_phi_tilde_n_batch({flow}, phi, n, base, samples, k_schedule, seed, options)
      .front();
}

Calibration calibrate_constant(const std::vector<FlowSpec>& flows, const QuasimorphismSpec& phi,
                               int n, const std::vector<double>& predicted, long samples,
                               std::uint64_t seed, const std::vector<long>& k_schedule,
                               const std::vector<Point>& base, const EstimatorOptions& options) {
  if (flows.size() < 2) throw InputError("calibration needs at least two flows");
  if (flows.size() != predicted.size()) throw InputError("one prediction per flow");
  for (double p : predicted) {
    if (p == 0 || !std::isfinite(p)) throw InputError("predictions must be finite and nonzero");
  }
  Calibration c;
  c.estimates = estimate_phi_tilde_n_batch(flows, phi, n, base, samples, k_schedule, seed, options);
  double variance = 0;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    c.ratios.push_back(c.estimates[i].value / predicted[i]);
    c.ratio_errors.push_back(c.estimates[i].std_error / std::abs(predicted[i]));
    c.constant += c.ratios.back();
    variance += c.ratio_errors.back() * c.ratio_errors.back();
  }
  c.constant /= static_cast<double>(flows.size());
  const double scale = std::abs(c.constant);
  for (double r : c.ratios) c.spread = std::max(c.spread, std::abs(r - c.constant));
  c.spread = scale > 0 ? c.spread / scale : (c.spread > 0 ? INFINITY : 0.0);
  c.relative_sigma = scale > 0 ? std::sqrt(variance) / scale : INFINITY;
  return c;
}

}  // namespace qmdisc
