#pragma once

#include "qmdisc/disc_flows.hpp"
#include "qmdisc/link_invariants.hpp"
#include "qmdisc/trajectories.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qmdisc {

// Throughout, an empty base means the default: the regular n-gon of radius
// 1/2.

struct QmEstimate {
  double value = 0;
  double std_error = 0;
  long samples = 0;   // accepted configurations
  long rejected = 0;  // non-generic configurations, excluded from the mean
  std::uint64_t seed = 0;
  std::vector<long> k_schedule;
  std::vector<double> k_values;  // Phi_n(g^k)/k for each k
  std::vector<double> k_errors;  // their standard errors
  double cauchy_error = 0;       // |last - previous| of k_values
};

struct EstimatorOptions {
  int samples_per_segment = 8;
  double max_step_angle = 0.05;
  double min_separation = 1e-6;
  int direction_attempts = 8;
  unsigned threads = 1;
  /// Generic projection direction; an axis would tie on symmetric bases.
  Point direction{0.5403023058681398, 0.8414709848078965};  // angle 1 rad
};

/// Integrand of Phi_n for one configuration: phi(gamma(g; x)) for each
/// of the given flows, or nullopt when the configuration is non-generic.
std::optional<std::vector<double>> configuration_values(const std::vector<FlowSpec>& flows,
                                                        const QuasimorphismSpec& phi,
                                                        const std::vector<Point>& base,
                                                        const std::vector<Point>& x,
                                                        const EstimatorOptions& options = {});

/// Monte Carlo estimates of pi^n E[phi(gamma(g_m; x))] for every flow g_m,
/// all from the same configurations: configuration i is drawn from the
/// stream keyed by (seed, i). Throws DegenerateConfiguration when more than
/// half of the configurations are rejected.
std::vector<QmEstimate> estimate_phi_n_batch(const std::vector<FlowSpec>& flows,
                                             const QuasimorphismSpec& phi, int n,
                                             const std::vector<Point>& base, long samples,
                                             std::uint64_t seed,
                                             const EstimatorOptions& options = {});

QmEstimate estimate_phi_n(const FlowSpec& flow, const QuasimorphismSpec& phi, int n,
                          const std::vector<Point>& base, long samples, std::uint64_t seed,
                          const EstimatorOptions& options = {});

/// Phi_n(g^k)/k for each k of the schedule, with g^k the flow at k times its
/// time coefficients. The value is the one at the largest k; its error is
/// the standard error plus the difference to the previous k.
QmEstimate estimate_phi_tilde_n(const FlowSpec& flow, const QuasimorphismSpec& phi, int n,
                                const std::vector<Point>& base, long samples,
                                const std::vector<long>& k_schedule, std::uint64_t seed,
                                const EstimatorOptions& options = {});

/// Same, for several flows sharing the configurations.
std::vector<QmEstimate> estimate_phi_tilde_n_batch(const std::vector<FlowSpec>& flows,
                                                   const QuasimorphismSpec& phi, int n,
                                                   const std::vector<Point>& base, long samples,
                                                   const std::vector<long>& k_schedule,
                                                   std::uint64_t seed,
                                                   const EstimatorOptions& options = {});

struct Calibration {
  double constant = 0;        // mean of estimate / predicted
  double spread = 0;          // max |ratio - constant| / |constant|
  double relative_sigma = 0;  // combined standard error of the ratios / |constant|
  std::vector<double> ratios;
  std::vector<double> ratio_errors;
  std::vector<QmEstimate> estimates;
};

/// Fits estimate = constant * predicted over the flows (homogenized over
/// k_schedule). Throws InputError for fewer than two flows, a size
/// mismatch, or a zero prediction.
Calibration calibrate_constant(const std::vector<FlowSpec>& flows, const QuasimorphismSpec& phi,
                               int n, const std::vector<double>& predicted, long samples,
                               std::uint64_t seed, const std::vector<long>& k_schedule = {1},
                               const std::vector<Point>& base = {},
                               const EstimatorOptions& options = {});

}  // namespace qmdisc
