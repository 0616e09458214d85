#pragma once

#include <vector>

#include "natmono/integrator.hpp"
#include "natmono/models.hpp"

namespace natmono {

/// How the (i, 1) entries of A are formed for rows i >= 2.
enum class OkuboCoefficients {
  /// v_i^2 + lambda_i (eps1^2 - 1/4): follows from differentiating the change
  /// of variables, valid for any weights.
  Exact,
  /// lambda_i (eps1^2 + v_i^2 - 1/4): the commonly quoted form, which agrees
  /// with Exact only when lambda_i = 1 (N = 2).
  AsPrinted,
};

/// (z I - C) dd/dz = A d for the star-coupled N-level model with z = sinh(t/T).
///
/// eps1_okubo = i E1 T / 2 and v_okubo[j] = -i V_j T are the scaled quantities
/// of this reduction; they are unrelated to the pi T-scaled ScaledParams.
struct OkuboSystem {
  int levels = 0;
  ComplexVector C;  // diagonal of C: (i, -i, ..., -i)
  ComplexMatrix A;
  std::vector<double> lambda;  // lambda_2 ... lambda_N, sum 1
  Complex eps1_okubo;
  std::vector<Complex> v_okubo;
  OkuboCoefficients form = OkuboCoefficients::Exact;
};

/// Throws WeightSumViolation unless sum(lambda) = 1 (to 1e-12) and ZeroCoupling
/// if any V_j = 0.
OkuboSystem build_okubo(const MultiLevelParams& p, const std::vector<double>& lambda,
                        OkuboCoefficients form = OkuboCoefficients::Exact);

/// (z I - C)^-1 A.
ComplexMatrix okubo_rhs(const OkuboSystem& sys, Complex z);

/// Physical amplitudes a(t) <-> diagonal-free variables c(t):
/// c1 = a1 exp(i int_0^t eps), c_i = a_i.
ComplexVector amplitudes_to_c(const MultiLevelParams& p, double t, const ComplexVector& a);
ComplexVector c_to_amplitudes(const MultiLevelParams& p, double t, const ComplexVector& c);

/// dc/dt implied by i da/dt = H(t) a.
ComplexVector c_time_derivative(const MultiLevelParams& p, double t, const ComplexVector& c);

/// Point on the z-trajectory together with log(1 + z^2) on the branch chosen
/// by continuity.
struct OkuboPoint {
  double t = 0.0;
  Complex z;
  Complex log_w;  // log(1 + z^2)
};

/// log(1 + z^2) at z = sinh(t/T) on the real-t trajectory, where
/// 1 + z^2 = cosh^2(t/T) and the branch through t = 0 is real.
OkuboPoint okubo_point(double t, double T);

ComplexVector c_to_d(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& c);
ComplexVector d_to_c(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& d);
/// dd/dz from c and dc/dz by the chain rule.
ComplexVector d_z_derivative(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& c,
                             const ComplexVector& dc_dz);

struct TrajectorySample {
  double t = 0.0;
  ComplexVector c;
};

struct OkuboSample {
  double t = 0.0;
  Complex z;
  ComplexVector d;
};

/// Applies the d-maps pointwise along a c-trajectory sampled at z = sinh(t/T).
/// log(1 + z^2) is unwrapped between consecutive samples.
std::vector<OkuboSample> transform_chain(const MultiLevelParams& p, const std::vector<double>& lambda,
                                         const std::vector<TrajectorySample>& trajectory,
                                         OkuboCoefficients form = OkuboCoefficients::Exact);

/// Samples (t, a(t)) of the Schrodinger evolution from the ground state of
/// H(t0), one per accepted integrator step.
std::vector<TrajectorySample> schrodinger_trajectory(const MultiLevelParams& p, double t0, double t1,
                                                     const IntegratorConfig& cfg);

/// sup over the trajectory of ||(z I - C) d' - A d||, with d' obtained from the
/// Schrodinger right-hand side. `amplitudes` holds a(t), not c(t).
double okubo_residual(const OkuboSystem& sys, const MultiLevelParams& p,
                      const std::vector<TrajectorySample>& amplitudes);

/// Integrates the Okubo system in the time parametrization
/// dd/dt = (cosh(t/T) / T) (z I - C)^-1 A d.
ComplexVector integrate_okubo(const OkuboSystem& sys, double T, const ComplexVector& d0, double t0,
                              double t1, const IntegratorConfig& cfg);

struct LambdaIndependenceReport {
  double max_diff = 0.0;          // |c(lambda_a) - c(lambda_b)| at t1
  double max_diff_direct = 0.0;   // vs direct Schrodinger propagation
  double tolerance = 1e-6;
  bool passed = false;
};

/// Maps the ground state of H(-window T) to d-variables for both weight sets,
/// integrates both Okubo systems to +window T and compares the reconstructed c.
LambdaIndependenceReport lambda_independence_check(const MultiLevelParams& p,
                                                   const std::vector<double>& lambda_a,
                                                   const std::vector<double>& lambda_b,
                                                   const IntegratorConfig& cfg, double window = 10.0,
                                                   OkuboCoefficients form = OkuboCoefficients::Exact);

/// Transition probability of the N-level model obtained by integrating the
/// Okubo form from -t_max to t_max and mapping back to physical amplitudes.
double okubo_transition_probability(const MultiLevelParams& p, const std::vector<double>& lambda,
                                    const IntegratorConfig& cfg, double t_max_factor = 40.0);

}  // namespace natmono
