#include <doctest.h>

#include <cmath>

#include "natmono/contour.hpp"
#include "natmono/error.hpp"

using namespace natmono;

TEST_CASE("segment geometry") {
  const Segment line = LineSegment{{0, 0}, {3, 4}};
  CHECK(segment_length(line) == doctest::Approx(5.0));
  const auto [z, dz] = segment_point(line, 2.5);
  CHECK(std::abs(z - Complex{1.5, 2.0}) < 1e-15);
  CHECK(std::abs(dz - Complex{0.6, 0.8}) < 1e-15);

  const Segment arc = ArcSegment{{1, 0}, 0.5, kPi, 3 * kPi};
  CHECK(segment_length(arc) == doctest::Approx(kPi));
  CHECK(std::abs(segment_start(arc) - Complex{0.5, 0}) < 1e-15);
  CHECK(std::abs(segment_end(arc) - Complex{0.5, 0}) < 1e-15);
  const auto [zq, tq] = segment_point(arc, 0.25 * kPi);  // quarter of the circle
  CHECK(std::abs(zq - Complex{1.0, -0.5}) < 1e-15);
  CHECK(std::abs(tq - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("paths: closure, reversal, clearance") {
  ContourPath loop({0.5, 2.0});
  loop.line_to(0.5).arc_around(1.0, 2 * kPi).line_to({0.5, 2.0});
  CHECK(loop.closed());
  CHECK(loop.segments().size() == 3);
  CHECK(loop.length() == doctest::Approx(4.0 + kPi));
  CHECK(loop.clearance(1.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(loop.clearance(0.0) == doctest::Approx(0.5).epsilon(1e-6));

  const ContourPath back = loop.reversed();
  CHECK(back.closed());
  CHECK(back.length() == doctest::Approx(loop.length()));
  const auto& arc = std::get<ArcSegment>(back.segments()[1]);
  CHECK(arc.end_angle < arc.start_angle);

  ContourPath open(0.0);
  open.line_to(1.0);
  CHECK_FALSE(open.closed());
  CHECK_THROWS_AS(open.append(LineSegment{{2, 0}, {3, 0}}), Error);
  ContourPath tail(1.0);
  tail.line_to({1, 1});
  open.append(tail);
  CHECK(std::abs(open.end() - Complex{1, 1}) < 1e-15);
  CHECK_THROWS_AS(ContourPath(0.0).arc_around(0.0, 1.0), Error);
}
