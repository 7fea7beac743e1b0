#include "qmdisc/trajectories.hpp"

#include "qmdisc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qmdisc {

namespace {

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

void check_distinct(const std::vector<Point>& points, const char* what) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if ((points[i] - points[j]).norm2() == 0) {
        throw InputError(std::string(what) + " points must be pairwise distinct");
      }
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TrajectoryBundle::TrajectoryBundle(std::vector<double> times,
                                   std::vector<std::vector<Point>> positions)
    : times_(std::move(times)), positions_(std::move(positions)) {
  if (times_.empty() || times_.size() != positions_.size()) {
    throw InputError("trajectory needs one position row per sample time");
  }
  strands_ = static_cast<int>(positions_.front().size());
  if (strands_ < 1) throw InputError("trajectory needs at least one strand");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!(times_[k] >= 0 && times_[k] <= 1)) throw InputError("sample times must lie in [0,1]");
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw InputError("sample times must be strictly increasing");
    }
    const auto& row = positions_[k];
    if (static_cast<int>(row.size()) != strands_) {
      throw InputError("every sample must carry all strands");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!(row[i].norm2() <= 1 + 1e-12)) throw InputError("trajectory leaves the unit disc");
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if ((row[i] - row[j]).norm2() < kCoincidence * kCoincidence) {
          throw DegenerateConfiguration("strands coincide", times_[k]);
        }
      }
    }
  }
}

bool TrajectoryBundle::is_loop() const {
  const auto& first = positions_.front();
  const auto& last = positions_.back();
  for (int i = 0; i < strands_; ++i) {
    if ((first[i] - last[i]).norm2() > 1e-24) return false;
  }
  return true;
}

TrajectoryBundle gg_loop(const std::vector<Point>& base, const std::vector<Point>& start,
                         const FlowSpec& flow, int samples_per_segment, double max_step_angle) {
  if (base.size() != start.size() || base.empty()) {
    throw InputError("base and start configurations must have the same positive size");
  }
  if (samples_per_segment < 2) throw InputError("samples_per_segment must be at least 2");
  if (!(max_step_angle > 0)) throw InputError("max_step_angle must be positive");
  check_distinct(base, "base");
  check_distinct(start, "start");

  const std::size_t n = base.size();
  std::vector<double> radius(n), angle(n), turn(n);
  double max_turn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (start[i].norm2() > 1 + 1e-12) throw InputError("start point outside the unit disc");
    radius[i] = std::sqrt(start[i].norm2());
    angle[i] = std::atan2(start[i].y, start[i].x);
    turn[i] = flow.angle_increment(start[i].norm2());
    max_turn = std::max(max_turn, std::abs(turn[i]));
  }
  const long middle_steps =
      std::max<long>(samples_per_segment - 1, std::lround(std::ceil(max_turn / max_step_angle)));

  std::vector<double> times;
  std::vector<std::vector<Point>> rows;
  const long line_steps = samples_per_segment - 1;
  auto push = [&](double t, std::vector<Point> row) {
    times.push_back(t);
    rows.push_back(std::move(row));
  };

  for (long k = 0; k <= line_steps; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(line_steps);
    std::vector<Point> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = (1 - s) * base[i] + s * start[i];
    if (k == line_steps) row = start;
    push(s / 3, std::move(row));
  }
  std::vector<Point> image(n);
  for (long k = 1; k <= middle_steps; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(middle_steps);
    std::vector<Point> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = angle[i] + s * turn[i];
      row[i] = {radius[i] * std::cos(a), radius[i] * std::sin(a)};
    }
    if (k == middle_steps) image = row;
    push((1 + s) / 3, std::move(row));
  }
  if (middle_steps == 0) image = start;
  for (long k = 1; k <= line_steps; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(line_steps);
    std::vector<Point> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = (1 - s) * image[i] + s * base[i];
    if (k == line_steps) row = base;
    push(k == line_steps ? 1.0 : (2 + s) / 3, std::move(row));
  }
  return TrajectoryBundle(std::move(times), std::move(rows));
}

std::vector<int> initial_positions(const TrajectoryBundle& bundle, Point direction) {
  const auto& row = bundle.at(0);
  std::vector<int> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dot(row[a], direction) < dot(row[b], direction); });
  std::vector<int> position(row.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = static_cast<int>(k) + 1;
  return position;
}

BraidWord extract_braid(const TrajectoryBundle& bundle, Point direction) {
  const double len = std::sqrt(direction.norm2());
  if (!(len > 0)) throw InputError("projection direction must be nonzero");
  direction = (1 / len) * direction;
  const Point normal{-direction.y, direction.x};
  const int n = bundle.strands();
  constexpr double kTie = 1e-12;

  std::vector<double> proj(n), next(n);
  auto project = [&](std::size_t k, std::vector<double>& out) {
    const auto& row = bundle.at(k);
    for (int i = 0; i < n; ++i) out[i] = dot(row[i], direction);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(out[i] - out[j]) < kTie) {
          throw DegenerateConfiguration("projection tie at a sample", bundle.times()[k]);
        }
      }
    }
  };

  project(0, proj);
  std::vector<int> order(n);  // order[pos] = strand
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return proj[a] < proj[b]; });
  std::vector<int> where(n);
  for (int k = 0; k < n; ++k) where[order[k]] = k;

  struct Event {
    double s;
    int a;
    int b;
  };
  std::vector<int> letters;
  std::vector<Event> events;
  for (std::size_t k = 1; k < bundle.samples(); ++k) {
    project(k, next);
    events.clear();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d0 = proj[i] - proj[j];
        const double d1 = next[i] - next[j];
        if ((d0 < 0) != (d1 < 0)) events.push_back({d0 / (d0 - d1), i, j});
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.s < y.s; });
    const double t0 = bundle.times()[k - 1];
    const double dt = bundle.times()[k] - t0;
    for (std::size_t e = 0; e < events.size(); ++e) {
      const Event& ev = events[e];
      const double when = t0 + ev.s * dt;
      const int lo = std::min(where[ev.a], where[ev.b]);
      const int hi = std::max(where[ev.a], where[ev.b]);
      // Exchanges of disjoint pairs commute, so only adjacency matters.
      if (hi != lo + 1) throw DegenerateConfiguration("simultaneous projection exchanges", when);
      const int left = order[lo];
      const int right = order[hi];
      const Point pl = (1 - ev.s) * bundle.at(k - 1)[left] + ev.s * bundle.at(k)[left];
      const Point pr = (1 - ev.s) * bundle.at(k - 1)[right] + ev.s * bundle.at(k)[right];
      const double side = dot(pr - pl, normal);
      if (std::abs(side) < TrajectoryBundle::kCoincidence) {
        throw DegenerateConfiguration("strands meet at an exchange", when);
      }
      letters.push_back(side > 0 ? lo + 1 : -(lo + 1));
      std::swap(order[lo], order[hi]);
      where[order[lo]] = lo;
      where[order[hi]] = hi;
    }
    proj.swap(next);
  }
  return BraidWord(std::move(letters), n);
}

Extraction extract_braid_robust(const TrajectoryBundle& bundle, Point direction, int attempts) {
  if (attempts < 1) throw InputError("attempts must be positive");
  for (int a = 0;; ++a) {
    try {
      const Point d = perturb_direction(direction, a);
      return {extract_braid(bundle, d), d, a};
    } catch (const DegenerateConfiguration&) {
      if (a + 1 >= attempts) throw;
    }
  }
}

Point perturb_direction(Point direction, int attempt) {
  if (attempt == 0) return direction;
  constexpr double kGoldenAngle = 2 * std::numbers::pi * (2 - std::numbers::phi);
  const double a = kGoldenAngle * attempt;
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {c * direction.x - s * direction.y, s * direction.x + c * direction.y};
}

namespace {

template <class Accumulate>
double sum_turns(const TrajectoryBundle& bundle, int i, int j, Accumulate acc) {
  const int n = bundle.strands();
  if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("strand index out of range");
  if (i == j) throw InputError("winding needs two distinct strands");
  double total = 0;
  Point prev{};
  for (std::size_t k = 0; k < bundle.samples(); ++k) {
    const Point v = bundle.at(k)[i] - bundle.at(k)[j];
    if (v.norm2() < TrajectoryBundle::kCoincidence * TrajectoryBundle::kCoincidence) {
      throw DomainError("strands coincide");
    }
    if (k > 0) total += acc(std::atan2(cross(prev, v), dot(prev, v)));
    prev = v;
  }
  return total / (2 * std::numbers::pi);
}

}  // namespace

double winding_length(const TrajectoryBundle& bundle, int i, int j) {
  return sum_turns(bundle, i, j, [](double a) { return std::abs(a); });
}

double winding_number(const TrajectoryBundle& bundle, int i, int j) {
  return sum_turns(bundle, i, j, [](double a) { return a; });
}

std::string format_trajectory_csv(const TrajectoryBundle& bundle) {
  std::ostringstream out;
  out << "n,T\n" << bundle.strands() << ',' << bundle.samples() << "\ntime,strand_index,x,y\n";
  for (std::size_t k = 0; k < bundle.samples(); ++k) {
    for (int i = 0; i < bundle.strands(); ++i) {
      const Point p = bundle.at(k)[i];
      out << format_double(bundle.times()[k]) << ',' << i + 1 << ',' << format_double(p.x) << ','
          << format_double(p.y) << '\n';
    }
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

double to_number(const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw InputError("bad number '" + cell + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad number '" + cell + "'");
  }
}

}  // namespace

TrajectoryBundle parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    rows.push_back(split_csv(line));
  }
  std::size_t r = 0;
  if (r < rows.size() && rows[r] == std::vector<std::string>{"n", "T"}) ++r;
  if (r >= rows.size() || rows[r].size() != 2) throw InputError("missing 'n,T' line");
  const double nd = to_number(rows[r][0]);
  const double td = to_number(rows[r][1]);
  if (nd < 1 || td < 1 || nd != std::floor(nd) || td != std::floor(td)) {
    throw InputError("strand and sample counts must be positive integers");
  }
  const auto n = static_cast<std::size_t>(nd);
  const auto samples = static_cast<std::size_t>(td);
  ++r;
  if (r < rows.size() && !rows[r].empty() && rows[r][0] == "time") ++r;
  if (rows.size() - r != n * samples) throw InputError("row count does not match n * T");

  std::vector<double> times;
  std::vector<std::vector<Point>> positions;
  std::vector<bool> seen;
  for (; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4) throw InputError("rows must be time,strand_index,x,y");
    const double t = to_number(row[0]);
    const double s = to_number(row[1]);
    if (s < 1 || s > static_cast<double>(n) || s != std::floor(s)) {
      throw InputError("strand index out of range");
    }
    if (times.empty() || t != times.back()) {
      times.push_back(t);
      positions.emplace_back(n);
      seen.assign(n, false);
    }
    const auto idx = static_cast<std::size_t>(s) - 1;
    if (seen[idx]) throw InputError("duplicate strand row at one time");
    seen[idx] = true;
    positions.back()[idx] = {to_number(row[2]), to_number(row[3])};
  }
  if (times.size() != samples) throw InputError("rows must be grouped by sample time");
  return TrajectoryBundle(std::move(times), std::move(positions));
}

std::vector<Point> regular_polygon(int n, double radius) {
  if (n < 1) throw InputError("polygon needs at least one vertex");
  std::vector<Point> points(n);
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * k / n;
    points[k] = {radius * std::cos(a), radius * std::sin(a)};
  }
  return points;
}

}  // namespace qmdisc
