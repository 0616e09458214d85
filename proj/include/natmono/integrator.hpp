#pragma once

#include <functional>

#include "natmono/contour.hpp"
#include "natmono/numerics.hpp"

namespace natmono {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // <= 0 selects a starting step automatically
  long max_steps = 2'000'000;

  void validate() const;
};

/// M(z) in dY/dz = M(z) Y. On a real interval z is real.
using CoefficientFn = std::function<ComplexMatrix(Complex z)>;

/// Called after every accepted step with the path position and current state.
using StepObserver = std::function<void(Complex z, const ComplexMatrix& y)>;

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of the linear system dY/dz = M(z) Y
/// along `path`. Each segment is parametrized by arc length s, so the solver
/// sees dY/ds = M(z(s)) Y z'(s). Y may carry several columns which are
/// transported together (fundamental matrices).
ComplexMatrix integrate_linear_ode(const CoefficientFn& rhs, const ComplexMatrix& y0,
                                   const ContourPath& path, const IntegratorConfig& cfg = {},
                                   const StepObserver& observer = {},
                                   IntegrationStats* stats = nullptr);

/// Real-interval form: integrates from t0 to t1 (either direction).
ComplexMatrix integrate_linear_ode(const CoefficientFn& rhs, const ComplexMatrix& y0, double t0,
                                   double t1, const IntegratorConfig& cfg = {},
                                   const StepObserver& observer = {},
                                   IntegrationStats* stats = nullptr);

}  // namespace natmono
