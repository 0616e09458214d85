#pragma once

#include <variant>
#include <vector>

#include "natmono/numerics.hpp"

namespace natmono {

struct LineSegment {
  Complex from;
  Complex to;
};

/// Circular arc z = center + radius * exp(i theta), theta from start_angle to
/// end_angle. end_angle > start_angle runs counterclockwise.
struct ArcSegment {
  Complex center;
  double radius = 0.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
};

using Segment = std::variant<LineSegment, ArcSegment>;

Complex segment_start(const Segment& s);
Complex segment_end(const Segment& s);
double segment_length(const Segment& s);
/// Point and unit tangent dz/ds at arc-length s along the segment.
std::pair<Complex, Complex> segment_point(const Segment& s, double arc_length);

/// Piecewise path in the complex plane. Consecutive segments must share
/// endpoints; this is checked on every append.
class ContourPath {
 public:
  ContourPath() = default;
  explicit ContourPath(Complex start) : start_(start), end_(start) {}

  ContourPath& line_to(Complex to);
  /// Arc around `center` that starts at the current endpoint and sweeps
  /// `sweep` radians (positive = counterclockwise).
  ContourPath& arc_around(Complex center, double sweep);
  ContourPath& append(const Segment& s);
  /// Appends all segments of `other`; its start must match the current end.
  ContourPath& append(const ContourPath& other);

  /// Same geometric path traversed backwards.
  ContourPath reversed() const;

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  Complex start() const noexcept { return start_; }
  Complex end() const noexcept { return end_; }
  double length() const;
  bool closed(double tol = 1e-12) const;

  /// Smallest distance from the path to `point`, sampled on every segment.
  double clearance(Complex point) const;

 private:
  Complex start_{};
  Complex end_{};
  std::vector<Segment> segments_;
};

}  // namespace natmono
