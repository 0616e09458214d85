#include "natmono/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "natmono/error.hpp"

namespace natmono {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be positive");
  if (max_steps <= 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Maps the solver's scalar parameter to (z, dz/ds).
using ParamMap = std::function<std::pair<Complex, Complex>(double)>;

struct Driver {
  const CoefficientFn& rhs;
  const IntegratorConfig& cfg;
  const StepObserver& observer;
  IntegrationStats& stats;
  long steps_taken = 0;

  ComplexMatrix f(const ParamMap& map, double s, const ComplexMatrix& y) {
    ++stats.evaluations;
    const auto [z, dz] = map(s);
    return (rhs(z) * y) * dz;
  }

  double error_norm(const ComplexMatrix& err, const ComplexMatrix& y0, const ComplexMatrix& y1) const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j)
      for (Eigen::Index i = 0; i < err.rows(); ++i) {
        const double sc =
            cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
        const double r = std::abs(err(i, j)) / sc;
        acc += r * r;
      }
    return std::sqrt(acc / static_cast<double>(err.size()));
  }

  double initial_step(const ParamMap& map, double s0, double dir, const ComplexMatrix& y0,
                      const ComplexMatrix& f0, double span) {
    if (cfg.initial_step > 0.0) return std::min(cfg.initial_step, span);
    const ComplexMatrix zero = ComplexMatrix::Zero(y0.rows(), y0.cols());
    const double d0 = error_norm(y0, y0, zero);
    const double d1 = error_norm(f0, y0, zero);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const ComplexMatrix f1 = f(map, s0 + dir * h0, y0 + (dir * h0) * f0);
    const double d2 = error_norm(f1 - f0, y0, zero) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, span});
  }

  // Integrates over s in [s0, s1] (s1 > s0 or s1 < s0).
  ComplexMatrix run(const ParamMap& map, double s0, double s1, ComplexMatrix y) {
    if (s0 == s1) return y;
    const double dir = s1 > s0 ? 1.0 : -1.0;
    const double span = std::abs(s1 - s0);
    double s = s0;
    ComplexMatrix k1 = f(map, s, y);
    double h = initial_step(map, s, dir, y, k1, span);
    bool last_rejected = false;

    while (dir * (s1 - s) > 0.0) {
      if (steps_taken >= cfg.max_steps)
        throw Error(ErrorCode::MaxStepsExceeded, "integrator exceeded max_steps");
      const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                              std::max({1.0, std::abs(s), std::abs(s1)});
      if (h < min_step) throw Error(ErrorCode::StepUnderflow, "step size underflow");

      double hs = dir * h;
      bool final_step = false;
      if (dir * (s + hs - s1) >= 0.0) {
        hs = s1 - s;
        final_step = true;
      }

      const ComplexMatrix k2 = f(map, s + c2 * hs, y + hs * (a21 * k1));
      const ComplexMatrix k3 = f(map, s + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
      const ComplexMatrix k4 = f(map, s + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const ComplexMatrix k5 =
          f(map, s + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const ComplexMatrix k6 =
          f(map, s + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      ComplexMatrix y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double s_new = final_step ? s1 : s + hs;
      ComplexMatrix k7 = f(map, s_new, y_new);
      const ComplexMatrix err =
          hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double en = error_norm(err, y, y_new);
      if (!std::isfinite(en)) {
        ++stats.rejected;
        h *= 0.1;
        last_rejected = true;
        continue;
      }

      if (en <= 1.0) {
        ++stats.accepted;
        ++steps_taken;
        s = s_new;
        y = std::move(y_new);
        k1 = std::move(k7);
        if (observer) observer(map(s).first, y);
        double fac = en == 0.0 ? 5.0 : 0.9 * std::pow(en, -0.2);
        fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
        h = std::abs(hs) * fac;
        last_rejected = false;
      } else {
        ++stats.rejected;
        h = std::abs(hs) * std::max(0.2, 0.9 * std::pow(en, -0.2));
        last_rejected = true;
      }
    }
    return y;
  }
};

}  // namespace

ComplexMatrix integrate_linear_ode(const CoefficientFn& rhs, const ComplexMatrix& y0,
                                   const ContourPath& path, const IntegratorConfig& cfg,
                                   const StepObserver& observer, IntegrationStats* stats) {
  cfg.validate();
  IntegrationStats local;
  Driver driver{rhs, cfg, observer, stats ? *stats : local};
  ComplexMatrix y = y0;
  for (const auto& seg : path.segments()) {
    const ParamMap map = [&seg](double s) { return segment_point(seg, s); };
    y = driver.run(map, 0.0, segment_length(seg), std::move(y));
  }
  return y;
}

ComplexMatrix integrate_linear_ode(const CoefficientFn& rhs, const ComplexMatrix& y0, double t0,
                                   double t1, const IntegratorConfig& cfg,
                                   const StepObserver& observer, IntegrationStats* stats) {
  cfg.validate();
  IntegrationStats local;
  Driver driver{rhs, cfg, observer, stats ? *stats : local};
  const ParamMap map = [](double t) { return std::pair<Complex, Complex>{Complex{t, 0.0}, 1.0}; };
  return driver.run(map, t0, t1, y0);
}

}  // namespace natmono
