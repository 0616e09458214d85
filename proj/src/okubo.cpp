#include "natmono/okubo.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "natmono/error.hpp"
#include "natmono/propagator.hpp"

namespace natmono {

namespace {

// ln cosh(u) without overflow.
double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

Complex half_shift(const OkuboSystem& sys) { return sys.eps1_okubo + 0.5; }

}  // namespace

OkuboSystem build_okubo(const MultiLevelParams& p, const std::vector<double>& lambda,
                        OkuboCoefficients form) {
  p.validate();
  const int n = p.levels();
  if (static_cast<int>(lambda.size()) != n - 1)
    throw Error(ErrorCode::InvalidArgument, "need one weight per coupled level");
  const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorCode::WeightSumViolation, "weights must sum to 1");
  for (double v : p.couplings)
    if (v == 0.0) throw Error(ErrorCode::ZeroCoupling, "every V_j must be nonzero");

  OkuboSystem sys;
  sys.levels = n;
  sys.lambda = lambda;
  sys.form = form;
  sys.eps1_okubo = kI * p.E1 * p.T / 2.0;
  for (double v : p.couplings) sys.v_okubo.push_back(-kI * v * p.T);

  sys.C = ComplexVector::Constant(n, -kI);
  sys.C(0) = kI;

  const Complex e1 = sys.eps1_okubo;
  const Complex h = half_shift(sys);
  sys.A = ComplexMatrix::Zero(n, n);
  sys.A(0, 0) = -h;
  for (int j = 1; j < n; ++j) sys.A(0, j) = 1.0;
  for (int i = 1; i < n; ++i) {
    const double li = lambda[i - 1];
    const Complex vi = sys.v_okubo[i - 1];
    sys.A(i, 0) = form == OkuboCoefficients::Exact ? vi * vi + li * (e1 * e1 - 0.25)
                                                   : li * (e1 * e1 + vi * vi - 0.25);
    for (int j = 1; j < n; ++j) sys.A(i, j) = -li * h;
    sys.A(i, i) -= 1.0;
  }
  return sys;
}

ComplexMatrix okubo_rhs(const OkuboSystem& sys, Complex z) {
  ComplexMatrix m = sys.A;
  for (int k = 0; k < sys.levels; ++k) m.row(k) /= (z - sys.C(k));
  return m;
}

ComplexVector amplitudes_to_c(const MultiLevelParams& p, double t, const ComplexVector& a) {
  ComplexVector c = a;
  c(0) *= std::exp(kI * p.E1 * p.T * log_cosh(t / p.T));
  return c;
}

ComplexVector c_to_amplitudes(const MultiLevelParams& p, double t, const ComplexVector& c) {
  ComplexVector a = c;
  a(0) *= std::exp(-kI * p.E1 * p.T * log_cosh(t / p.T));
  return a;
}

ComplexVector c_time_derivative(const MultiLevelParams& p, double t, const ComplexVector& c) {
  const Complex phase = std::exp(kI * p.E1 * p.T * log_cosh(t / p.T));
  const int n = p.levels();
  ComplexVector dc(n);
  Complex coupled = 0.0;
  for (int j = 1; j < n; ++j) coupled += p.couplings[j - 1] * c(j);
  dc(0) = -kI * phase * coupled;
  for (int i = 1; i < n; ++i) dc(i) = -kI * p.couplings[i - 1] / phase * c(0);
  return dc;
}

OkuboPoint okubo_point(double t, double T) {
  const double u = t / T;
  return {t, Complex{std::sinh(u), 0.0}, Complex{2.0 * log_cosh(u), 0.0}};
}

ComplexVector c_to_d(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& c) {
  const Complex h = half_shift(sys);
  const Complex z = pt.z;
  ComplexVector d(sys.levels);
  d(0) = std::exp(-h * pt.log_w) * c(0);
  for (int i = 1; i < sys.levels; ++i)
    d(i) = sys.v_okubo[i - 1] * c(i) / (z + kI) - sys.lambda[i - 1] * h * (z - kI) / (z + kI) * d(0);
  return d;
}

ComplexVector d_to_c(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& d) {
  const Complex h = half_shift(sys);
  const Complex z = pt.z;
  ComplexVector c(sys.levels);
  c(0) = std::exp(h * pt.log_w) * d(0);
  for (int i = 1; i < sys.levels; ++i)
    c(i) = (z + kI) / sys.v_okubo[i - 1] *
           (d(i) + sys.lambda[i - 1] * h * (z - kI) / (z + kI) * d(0));
  return c;
}

ComplexVector d_z_derivative(const OkuboSystem& sys, const OkuboPoint& pt, const ComplexVector& c,
                             const ComplexVector& dc_dz) {
  const Complex h = half_shift(sys);
  const Complex z = pt.z;
  const Complex zp = z + kI;
  const Complex pw = std::exp(-h * pt.log_w);
  ComplexVector dd(sys.levels);
  const Complex d1 = pw * c(0);
  dd(0) = -h * 2.0 * z / (1.0 + z * z) * d1 + pw * dc_dz(0);
  for (int i = 1; i < sys.levels; ++i) {
    const Complex vi = sys.v_okubo[i - 1];
    dd(i) = vi * dc_dz(i) / zp - vi * c(i) / (zp * zp) -
            sys.lambda[i - 1] * h * (2.0 * kI / (zp * zp) * d1 + (z - kI) / zp * dd(0));
  }
  return dd;
}

std::vector<OkuboSample> transform_chain(const MultiLevelParams& p, const std::vector<double>& lambda,
                                         const std::vector<TrajectorySample>& trajectory,
                                         OkuboCoefficients form) {
  const OkuboSystem sys = build_okubo(p, lambda, form);
  std::vector<OkuboSample> out;
  out.reserve(trajectory.size());
  double prev_arg = 0.0;
  double winding = 0.0;
  for (const auto& s : trajectory) {
    OkuboPoint pt = okubo_point(s.t, p.T);
    // Continuous branch of arg(1 + z^2); identically zero on the real axis,
    // kept so the d-maps stay consistent if the trajectory leaves it.
    const double arg = std::arg(1.0 + pt.z * pt.z);
    double jump = arg - prev_arg;
    if (jump > kPi) winding -= 2.0 * kPi;
    if (jump < -kPi) winding += 2.0 * kPi;
    prev_arg = arg;
    pt.log_w = Complex{pt.log_w.real(), arg + winding};
    out.push_back({s.t, pt.z, c_to_d(sys, pt, s.c)});
  }
  return out;
}

std::vector<TrajectorySample> schrodinger_trajectory(const MultiLevelParams& p, double t0, double t1,
                                                     const IntegratorConfig& cfg) {
  const Model model = p;
  const EigenSystem sys = eigen_hermitian(multilevel_hamiltonian(p, t0));
  std::vector<TrajectorySample> samples;
  const ComplexVector psi0 = sys.vectors.col(0);
  samples.push_back({t0, psi0});
  const StepObserver record = [&samples](Complex z, const ComplexMatrix& y) {
    samples.push_back({z.real(), y.col(0)});
  };
  evolve(model, psi0, t0, t1, cfg, record);
  return samples;
}

double okubo_residual(const OkuboSystem& sys, const MultiLevelParams& p,
                      const std::vector<TrajectorySample>& amplitudes) {
  double worst = 0.0;
  for (const auto& s : amplitudes) {
    const ComplexVector c = amplitudes_to_c(p, s.t, s.c);
    const ComplexVector dc_dz = c_time_derivative(p, s.t, c) * (p.T / std::cosh(s.t / p.T));
    const OkuboPoint pt = okubo_point(s.t, p.T);
    const ComplexVector d = c_to_d(sys, pt, c);
    const ComplexVector dd = d_z_derivative(sys, pt, c, dc_dz);
    ComplexVector lhs(sys.levels);
    for (int k = 0; k < sys.levels; ++k) lhs(k) = (pt.z - sys.C(k)) * dd(k);
    worst = std::max(worst, (lhs - sys.A * d).norm());
  }
  return worst;
}

ComplexVector integrate_okubo(const OkuboSystem& sys, double T, const ComplexVector& d0, double t0,
                              double t1, const IntegratorConfig& cfg) {
  // Every solution decays like 1/z, so the solver works on g = cosh(t/T) d,
  // which stays O(1) and keeps abs_tol meaningful far from t = 0.
  const int n = sys.levels;
  const CoefficientFn rhs = [&sys, T, n](Complex tz) -> ComplexMatrix {
    const double u = tz.real() / T;
    ComplexMatrix m = (std::cosh(u) / T) * okubo_rhs(sys, Complex{std::sinh(u), 0.0});
    m += (std::tanh(u) / T) * ComplexMatrix::Identity(n, n);
    return m;
  };
  const ComplexVector g = integrate_linear_ode(rhs, d0 * std::cosh(t0 / T), t0, t1, cfg);
  return g / std::cosh(t1 / T);
}

LambdaIndependenceReport lambda_independence_check(const MultiLevelParams& p,
                                                   const std::vector<double>& lambda_a,
                                                   const std::vector<double>& lambda_b,
                                                   const IntegratorConfig& cfg, double window,
                                                   OkuboCoefficients form) {
  const double t0 = -window * p.T;
  const double t1 = window * p.T;
  const ComplexVector psi0 = eigen_hermitian(multilevel_hamiltonian(p, t0)).vectors.col(0);
  const ComplexVector c0 = amplitudes_to_c(p, t0, psi0);
  const OkuboPoint start = okubo_point(t0, p.T);
  const OkuboPoint end = okubo_point(t1, p.T);

  auto reconstruct = [&](const std::vector<double>& lambda) {
    const OkuboSystem sys = build_okubo(p, lambda, form);
    const ComplexVector d1 = integrate_okubo(sys, p.T, c_to_d(sys, start, c0), t0, t1, cfg);
    return d_to_c(sys, end, d1);
  };
  const ComplexVector ca = reconstruct(lambda_a);
  const ComplexVector cb = reconstruct(lambda_b);
  const ComplexVector direct = amplitudes_to_c(p, t1, evolve(Model{p}, psi0, t0, t1, cfg));

  LambdaIndependenceReport report;
  report.max_diff = (ca - cb).cwiseAbs().maxCoeff();
  report.max_diff_direct =
      std::max((ca - direct).cwiseAbs().maxCoeff(), (cb - direct).cwiseAbs().maxCoeff());
  report.passed = report.max_diff < report.tolerance && report.max_diff_direct < report.tolerance;
  return report;
}

double okubo_transition_probability(const MultiLevelParams& p, const std::vector<double>& lambda,
                                    const IntegratorConfig& cfg, double t_max_factor) {
  const OkuboSystem sys = build_okubo(p, lambda);
  const double t_max = t_max_factor * p.T;
  const ComplexVector psi0 = eigen_hermitian(multilevel_hamiltonian(p, -t_max)).vectors.col(0);
  const ComplexVector d0 = c_to_d(sys, okubo_point(-t_max, p.T), amplitudes_to_c(p, -t_max, psi0));
  const ComplexVector d1 = integrate_okubo(sys, p.T, d0, -t_max, t_max, cfg);
  const ComplexVector a1 = c_to_amplitudes(p, t_max, d_to_c(sys, okubo_point(t_max, p.T), d1));
  const EigenSystem fin = eigen_hermitian(multilevel_hamiltonian(p, t_max));
  const ComplexVector overlaps = fin.vectors.adjoint() * a1;
  double excited = 0.0;
  for (Eigen::Index k = 1; k < overlaps.size(); ++k) excited += std::norm(overlaps(k));
  return excited;
}

}  // namespace natmono
