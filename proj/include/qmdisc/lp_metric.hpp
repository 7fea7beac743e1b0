#pragma once

#include "qmdisc/disc_flows.hpp"
#include "qmdisc/trajectories.hpp"

#include <cstdint>
#include <functional>

namespace qmdisc {

/// (t, x) -> g_t(x) for t in [0,1], with g_0 the identity.
using Isotopy = std::function<Point(double, Point)>;

/// The flow of `spec` run for time t, as an isotopy.
Isotopy flow_isotopy(const FlowSpec& spec);

struct LpLength {
  double value = 0;
  double std_error = 0;   // Monte Carlo error, delta method
  int time_steps = 0;     // grid actually used
  double refinement_change = 0;  // relative change of the last grid doubling
  bool converged = false;        // refinement_change below tolerance
};

struct LpOptions {
  double refinement_tolerance = 1e-3;
  int max_doublings = 6;
  double difference_step = 1e-5;
  unsigned threads = 1;
};

/// int_0^1 (int_D |d/dt g_t(x)|^p dx)^(1/p) dt. The inner integral is a Monte
/// Carlo mean over `space_samples` uniform points of the disc (area pi),
/// shared by all times; velocities are centred differences in t (one-sided
/// second order at the ends); the outer integral is the trapezoid rule on
/// `time_steps` intervals, doubled until a doubling changes the result by
/// less than the refinement tolerance. Point j is drawn from the stream
/// keyed by (seed, j).
LpLength lp_length_sampled(const Isotopy& isotopy, double p, int time_steps, long space_samples,
                           std::uint64_t seed, const LpOptions& options = {});

/// The same functional evaluated on a sampled bundle, with its strands as
/// the spatial sample (pi times the mean over strands) and differences
/// between consecutive samples as velocities.
LpLength lp_length_trajectory(const TrajectoryBundle& bundle, double p);

/// pi^(1/p - 1): the constant C_p with C_p L_1 <= L_p on the unit disc.
/// Throws InputError for p < 1.
double holder_constant(double p);

}  // namespace qmdisc
