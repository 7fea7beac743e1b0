#pragma once

#include "qmdisc/braid.hpp"
#include "qmdisc/disc_flows.hpp"

#include <string>
#include <vector>

namespace qmdisc {

/// n strands sampled at common, strictly increasing times in [0,1].
class TrajectoryBundle {
 public:
  TrajectoryBundle() = default;

  /// positions[k][i] is strand i at times[k]. Throws InputError on a shape
  /// mismatch, non-increasing or out-of-range times, or a point outside the
  /// closed unit disc; DegenerateConfiguration when two strands come closer
  /// than kCoincidence at a sample.
  TrajectoryBundle(std::vector<double> times, std::vector<std::vector<Point>> positions);

  int strands() const noexcept { return strands_; }
  std::size_t samples() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Point>& at(std::size_t sample) const { return positions_[sample]; }

  /// True when every strand ends where it starts (to within 1e-12).
  bool is_loop() const;

  static constexpr double kCoincidence = 1e-9;

 private:
  int strands_ = 0;
  std::vector<double> times_;
  std::vector<std::vector<Point>> positions_;
};

/// Straight lines base -> start on [0,1/3], the flow orbit of start on
/// [1/3,2/3], straight lines back to base on [2/3,1]. The middle segment is
/// refined so that no point turns by more than max_step_angle per step.
TrajectoryBundle gg_loop(const std::vector<Point>& base, const std::vector<Point>& start,
                         const FlowSpec& flow, int samples_per_segment,
                         double max_step_angle = 0.05);

/// Braid word read off the projection onto `direction`. Every exchange of two
/// adjacent strands between consecutive samples emits sigma_k, where k is the
/// left position; the sign is +1 when the right strand passes on the
/// counterclockwise side. Throws DegenerateConfiguration on projection ties.
BraidWord extract_braid(const TrajectoryBundle& bundle, Point direction);

struct Extraction {
  BraidWord word;
  Point direction;  // the direction that succeeded
  int attempt = 0;
};

/// Tries perturb_direction(direction, a) for a = 0 .. attempts-1 and returns
/// the first successful extraction; rethrows the last degeneracy.
Extraction extract_braid_robust(const TrajectoryBundle& bundle, Point direction,
                                int attempts = 8);

/// 1-based position of every strand in the projection order at the first
/// sample; positions are the strand labels used by the extracted word.
std::vector<int> initial_positions(const TrajectoryBundle& bundle, Point direction);

/// `direction` rotated by attempt times an irrational multiple of pi.
Point perturb_direction(Point direction, int attempt);

/// Total variation of the direction of strand i minus strand j, in turns.
/// Strands are 0-based. Throws DomainError if they come too close.
double winding_length(const TrajectoryBundle& bundle, int i, int j);

/// Signed rotation of the same direction vector, in turns.
double winding_number(const TrajectoryBundle& bundle, int i, int j);

/// CSV: a header line "n,T", a line with the strand and sample counts, a
/// header line "time,strand_index,x,y", then one row per strand and sample
/// with 1-based strand indices.
std::string format_trajectory_csv(const TrajectoryBundle& bundle);
TrajectoryBundle parse_trajectory_csv(const std::string& text);

/// Vertices of a regular n-gon of the given radius, first vertex on the
/// positive x axis.
std::vector<Point> regular_polygon(int n, double radius = 0.5);

}  // namespace qmdisc
