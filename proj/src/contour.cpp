#include "natmono/contour.hpp"

#include <algorithm>
#include <cmath>

#include "natmono/error.hpp"

namespace natmono {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Complex arc_point(const ArcSegment& a, double theta) {
  return a.center + a.radius * std::exp(kI * theta);
}

}  // namespace

Complex segment_start(const Segment& s) {
  return std::visit(overloaded{[](const LineSegment& l) { return l.from; },
                               [](const ArcSegment& a) { return arc_point(a, a.start_angle); }},
                    s);
}

Complex segment_end(const Segment& s) {
  return std::visit(overloaded{[](const LineSegment& l) { return l.to; },
                               [](const ArcSegment& a) { return arc_point(a, a.end_angle); }},
                    s);
}

double segment_length(const Segment& s) {
  return std::visit(
      overloaded{[](const LineSegment& l) { return std::abs(l.to - l.from); },
                 [](const ArcSegment& a) { return a.radius * std::abs(a.end_angle - a.start_angle); }},
      s);
}

std::pair<Complex, Complex> segment_point(const Segment& s, double arc_length) {
  return std::visit(
      overloaded{[&](const LineSegment& l) -> std::pair<Complex, Complex> {
                   const double len = std::abs(l.to - l.from);
                   const Complex dir = len > 0 ? (l.to - l.from) / len : Complex{1.0};
                   // Measure from the nearer end so the endpoint is hit exactly.
                   const Complex z = arc_length <= 0.5 * len ? l.from + arc_length * dir
                                                             : l.to - (len - arc_length) * dir;
                   return {z, dir};
                 },
                 [&](const ArcSegment& a) -> std::pair<Complex, Complex> {
                   const double orient = a.end_angle >= a.start_angle ? 1.0 : -1.0;
                   const double theta = a.start_angle + orient * arc_length / a.radius;
                   const Complex u = std::exp(kI * theta);
                   return {a.center + a.radius * u, orient * kI * u};
                 }},
      s);
}

ContourPath& ContourPath::append(const Segment& s) {
  const Complex from = segment_start(s);
  const double scale = std::max({1.0, std::abs(from), std::abs(end_)});
  if (std::abs(from - end_) > 1e-12 * scale)
    throw Error(ErrorCode::InvalidArgument, "contour segments must share endpoints");
  if (const auto* arc = std::get_if<ArcSegment>(&s); arc && !(arc->radius > 0.0))
    throw Error(ErrorCode::InvalidArgument, "arc radius must be positive");
  segments_.push_back(s);
  end_ = segment_end(s);
  return *this;
}

ContourPath& ContourPath::line_to(Complex to) { return append(LineSegment{end_, to}); }

ContourPath& ContourPath::arc_around(Complex center, double sweep) {
  const Complex rel = end_ - center;
  const double start = std::arg(rel);
  return append(ArcSegment{center, std::abs(rel), start, start + sweep});
}

ContourPath& ContourPath::append(const ContourPath& other) {
  for (const auto& s : other.segments_) append(s);
  return *this;
}

ContourPath ContourPath::reversed() const {
  ContourPath out(end_);
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    std::visit(overloaded{[&](const LineSegment& l) { out.append(LineSegment{l.to, l.from}); },
                          [&](const ArcSegment& a) {
                            out.append(ArcSegment{a.center, a.radius, a.end_angle, a.start_angle});
                          }},
               *it);
  }
  return out;
}

double ContourPath::length() const {
  double total = 0.0;
  for (const auto& s : segments_) total += segment_length(s);
  return total;
}

bool ContourPath::closed(double tol) const { return std::abs(end_ - start_) <= tol; }

double ContourPath::clearance(Complex point) const {
  double best = std::abs(start_ - point);
  for (const auto& s : segments_) {
    const double len = segment_length(s);
    constexpr int kSamples = 512;
    for (int k = 0; k <= kSamples; ++k)
      best = std::min(best, std::abs(segment_point(s, len * k / kSamples).first - point));
  }
  return best;
}

}  // namespace natmono
