#include <doctest.h>

#include <cmath>

#include "natmono/contour.hpp"
#include "natmono/error.hpp"
#include "natmono/integrator.hpp"

using namespace natmono;

TEST_CASE("integration along complex paths") {
  ContourPath half(1.0);
  half.arc_around(0.0, kPi);
  const CoefficientFn zero = [](Complex) { return ComplexMatrix::Zero(1, 1); };
  ComplexMatrix y0(1, 1);
  y0(0, 0) = 1.0;
  // y' = y / z from 1 to -1 along the upper half circle: y = z.
  const CoefficientFn over_z = [](Complex z) { return ComplexMatrix::Constant(1, 1, 1.0 / z); };
  const ComplexMatrix y = integrate_linear_ode(over_z, y0, half, {1e-12, 1e-14});
  CHECK(std::abs(y(0, 0) + 1.0) < 1e-10);

  // y' = (i pi / L) y along a path of length L: y = exp(i pi) = -1.
  ContourPath line(0.0);
  line.line_to({2.0, 1.0});
  const double L = line.length();
  const Complex w = kI * kPi / Complex{2.0, 1.0};
  const CoefficientFn lin = [w](Complex) { return ComplexMatrix::Constant(1, 1, w); };
  const ComplexMatrix e = integrate_linear_ode(lin, y0, line, {1e-12, 1e-14});
  CHECK(L > 0);
  CHECK(std::abs(e(0, 0) + 1.0) < 1e-10);
  CHECK(std::abs(integrate_linear_ode(zero, y0, line)(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("full loop of y' = (1/2) y / z gives the sign change of sqrt") {
  ContourPath loop(1.0);
  loop.arc_around(0.0, 2.0 * kPi);
  const CoefficientFn f = [](Complex z) { return ComplexMatrix::Constant(1, 1, 0.5 / z); };
  ComplexMatrix y0(1, 1);
  y0(0, 0) = 1.0;
  CHECK(std::abs(integrate_linear_ode(f, y0, loop, {1e-12, 1e-14})(0, 0) + 1.0) < 1e-10);
  CHECK(std::abs(integrate_linear_ode(f, y0, loop.reversed(), {1e-12, 1e-14})(0, 0) + 1.0) < 1e-10);
}

TEST_CASE("real-interval integration of a rotation, forwards and backwards") {
  // y' = -i H y with H = sigma_x: y(t) = (cos t, -i sin t).
  const CoefficientFn rot = [](Complex) {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, -kI, 0.0;
    return m;
  };
  ComplexMatrix y0(2, 1);
  y0 << 1.0, 0.0;
  IntegrationStats stats;
  const ComplexMatrix y = integrate_linear_ode(rot, y0, 0.0, 3.0, {1e-12, 1e-14}, {}, &stats);
  CHECK(std::abs(y(0, 0) - std::cos(3.0)) < 1e-10);
  CHECK(std::abs(y(1, 0) + kI * std::sin(3.0)) < 1e-10);
  CHECK(stats.accepted > 0);
  CHECK(stats.evaluations >= 6 * stats.accepted);
  const ComplexMatrix back = integrate_linear_ode(rot, y, 3.0, 0.0, {1e-12, 1e-14});
  CHECK((back - y0).norm() < 1e-10);

  int calls = 0;
  integrate_linear_ode(rot, y0, 0.0, 1.0, {}, [&](Complex, const ComplexMatrix&) { ++calls; });
  CHECK(calls > 0);
}

TEST_CASE("tighter tolerance reduces the error") {
  const CoefficientFn f = [](Complex z) { return ComplexMatrix::Constant(1, 1, kI * std::cos(z)); };
  ComplexMatrix y0(1, 1);
  y0(0, 0) = 1.0;
  const Complex exact = std::exp(kI * std::sin(Complex{6.0, 0.0}));
  double previous = 1.0;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const double err = std::abs(integrate_linear_ode(f, y0, 0.0, 6.0, {tol, tol * 1e-2})(0, 0) - exact);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-9);
}

TEST_CASE("integrator failures") {
  const CoefficientFn f = [](Complex) { return ComplexMatrix::Constant(1, 1, 1.0); };
  ComplexMatrix y0(1, 1);
  y0(0, 0) = 1.0;
  IntegratorConfig cfg;
  cfg.max_steps = 3;
  try {
    integrate_linear_ode(f, y0, 0.0, 100.0, cfg);
    FAIL("expected MaxStepsExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxStepsExceeded);
  }
  IntegratorConfig bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate_linear_ode(f, y0, 0.0, 1.0, bad), Error);
  // y' = y / (1 - t) blows up at t = 1.
  const CoefficientFn pole = [](Complex t) { return ComplexMatrix::Constant(1, 1, 1.0 / (1.0 - t)); };
  CHECK_THROWS_AS(integrate_linear_ode(pole, y0, 0.0, 1.0), Error);
}
