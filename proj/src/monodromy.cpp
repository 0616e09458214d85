#include "natmono/monodromy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "natmono/error.hpp"

namespace natmono {

HypParams hyp_params(const TwoLevelParams& p, bool primed) {
  if (!(p.T > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep time T must be positive");
  const double sign = primed ? -1.0 : 1.0;
  const double E0 = sign * p.E0;
  const double E1 = sign * p.E1;
  const double r = std::hypot(E1, p.V0);
  return {kI * p.T * (-E1 + r), kI * p.T * (-E1 - r), Complex{0.5 + E0 * p.T, -E1 * p.T}};
}

HypParams primed_partner(const HypParams& h) { return {-h.beta, -h.alpha, 1.0 - h.gamma}; }

ComplexMatrix2 connection_matrix_S(const HypParams& h) {
  const auto& [al, be, ga] = h;
  const Complex denom = e_of(-al) - e_of(be - ga);
  if (std::abs(denom) < 1e-13)
    throw Error(ErrorCode::SingularConnection, "e(-alpha) = e(beta - gamma): parameter resonance");
  ComplexMatrix2 s;
  s << e_of(be - ga) - e_of(-ga), e_of(al + be - 2.0 * ga) - e_of(be - ga),  //
      1.0 - e_of(-al), e_of(be - ga) - 1.0;
  return s / denom;
}

ComplexMatrix2 local_monodromy_Gamma(const HypParams& h) {
  ComplexMatrix2 g = ComplexMatrix2::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = e_of(exponent_at_one(h));
  return g;
}

Complex monodromy_element_a(const HypParams& h) {
  const auto& [al, be, ga] = h;
  const Complex denom = e_of(be - ga) - e_of(al - ga);
  if (std::abs(denom) < 1e-13)
    throw Error(ErrorCode::SingularConnection, "e(beta - gamma) = e(alpha - gamma)");
  return (e_of(be - ga) - e_of(-ga) + e_of(-al) - 1.0) / denom;
}

MonodromyData global_monodromy(const HypParams& h) {
  MonodromyData out;
  out.S = connection_matrix_S(h);
  out.Gamma = local_monodromy_Gamma(h);
  out.Rtilde = out.S.inverse() * out.Gamma * out.S;
  out.a = monodromy_element_a(h);
  out.a_prime = monodromy_element_a(primed_partner(h));
  if (std::abs(out.a - out.Rtilde(0, 0)) > 1e-10 * std::max(1.0, std::abs(out.a)))
    throw std::logic_error("closed-form a disagrees with (S^-1 Gamma S)_11");
  return out;
}

ComplexMatrix2 fundamental_matrix_at_infinity(const HypParams& h, Complex z) {
  if (!(std::abs(z) > 1.0))
    throw Error(ErrorCode::PreconditionViolated, "fundamental solutions at infinity need |z| > 1");
  const auto& [al, be, ga] = h;
  const Complex w = 1.0 / z;
  const Complex log_z = std::log(z);

  auto column = [&](Complex expo, Complex A, Complex B, Complex C) {
    const Complex F = eval_2f1(A, B, C, w);
    const Complex dF = A * B / C * eval_2f1(A + 1.0, B + 1.0, C + 1.0, w);
    const Complex pw = std::exp(-expo * log_z);  // z^-expo
    const Eigen::Vector2cd col{pw * F, -expo * pw * w * F - pw * w * w * dF};
    return col;
  };
  ComplexMatrix2 phi;
  phi.col(0) = column(al, al, al - ga + 1.0, al - be + 1.0);
  phi.col(1) = column(be, be - ga + 1.0, be, be - al + 1.0);
  return phi;
}

ComplexMatrix hypergeometric_system(const HypParams& h, Complex z) {
  const auto& [al, be, ga] = h;
  const Complex denom = z * (1.0 - z);
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, al * be / denom, -(ga - (1.0 + al + be) * z) / denom;
  return m;
}

ContourPath default_monodromy_loop(const NumericMonodromyOptions& opts) {
  if (!(opts.loop_radius > 0.0) || opts.loop_radius >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "loop radius must lie in (0, 1) so z = 0 stays outside");
  const double sweep = opts.orientation == LoopOrientation::Counterclockwise ? 2.0 * kPi : -2.0 * kPi;
  const Complex one{1.0, 0.0};
  const Complex on_circle = one - opts.loop_radius;
  ContourPath path(opts.basis_point);
  path.line_to(opts.base_point);
  if (std::abs(on_circle - opts.base_point) > 0.0) path.line_to(on_circle);
  path.arc_around(one, sweep);
  if (std::abs(on_circle - opts.base_point) > 0.0) path.line_to(opts.base_point);
  path.line_to(opts.basis_point);
  return path;
}

ComplexMatrix2 monodromy_along(const HypParams& h, const ContourPath& loop, Complex basis_point,
                               const IntegratorConfig& cfg) {
  if (std::abs(loop.start() - basis_point) > 1e-12 || !loop.closed())
    throw Error(ErrorCode::InvalidArgument, "loop must start and end at the basis point");
  constexpr double kClearance = 1e-3;
  if (loop.clearance(0.0) < kClearance || loop.clearance(1.0) < kClearance)
    throw Error(ErrorCode::PreconditionViolated, "loop passes too close to a singular point");
  const ComplexMatrix2 phi0 = fundamental_matrix_at_infinity(h, basis_point);
  if (std::abs(phi0.determinant()) < 1e-10)
    throw Error(ErrorCode::BasisIllConditioned, "Wronskian of the basis at infinity is too small");
  const CoefficientFn rhs = [&h](Complex z) { return hypergeometric_system(h, z); };
  const ComplexMatrix phi1 = integrate_linear_ode(rhs, phi0, loop, cfg);
  return phi0.inverse() * ComplexMatrix2(phi1);
}

ComplexMatrix2 numeric_monodromy(const HypParams& h, const IntegratorConfig& cfg,
                                 const NumericMonodromyOptions& opts) {
  return monodromy_along(h, default_monodromy_loop(opts), opts.basis_point, cfg);
}

PhaseData phase_data(const TwoLevelParams& p) {
  const HypParams h = hyp_params(p, false);
  const HypParams hp = hyp_params(p, true);
  PhaseData ph;
  ph.phi0 = p.T * p.E0 * kPi / 2.0;
  ph.phi1 = p.T * p.E1 * std::numbers::ln2;
  ph.varphi1 = -kI * 2.0 * h.alpha * std::numbers::ln2;
  ph.varphi1_prime = -kI * 2.0 * hp.alpha * std::numbers::ln2;
  ph.varphi = 0.0;
  return ph;
}

InitialCoefficients initial_coefficients(const TwoLevelParams& p) {
  p.validate();
  const HypParams h = hyp_params(p, false);
  const HypParams hp = hyp_params(p, true);
  const PhaseData ph = phase_data(p);
  const auto [A, Ap] = mixing_amplitudes(p.E1, p.V0);
  const double s = p.V0 < 0.0 ? -1.0 : 1.0;
  InitialCoefficients out;
  out.A1 = A * std::exp(kI * kPi * h.alpha / 2.0 - kI * ph.phi1 - kI * ph.phi0 - kI * ph.varphi1);
  out.A2 = 0.0;
  out.B1 = -s * Ap *
           std::exp(kI * kPi * hp.alpha / 2.0 + kI * ph.phi1 + kI * ph.phi0 - kI * ph.varphi1_prime);
  out.B2 = 0.0;
  out.phases = ph;
  return out;
}

namespace {

// sinh(x)/sinh(y) and cosh(x)/cosh(y) for 0 <= x <= y without overflow.
double sinh_ratio(double x, double y) {
  if (y <= 20.0) return std::sinh(x) / std::sinh(y);
  return std::exp(x - y) * std::expm1(-2.0 * x) / std::expm1(-2.0 * y);
}

double cosh_ratio(double x, double y) {
  if (y <= 20.0) return std::cosh(x) / std::cosh(y);
  return std::exp(x - y) * (1.0 + std::exp(-2.0 * x)) / (1.0 + std::exp(-2.0 * y));
}

}  // namespace

double transition_probability(const ScaledParams& s) {
  const double x = std::abs(s.eps1);
  const double rho = std::hypot(s.eps1, s.v);
  if (rho == 0.0) throw Error(ErrorCode::DegenerateAsymptote, "eps1 = v = 0");
  const double rs = sinh_ratio(x, rho);
  const double rc = cosh_ratio(x, rho);
  const double c = std::cos(s.eps0);
  const double sn = std::sin(s.eps0);
  return rs * rs * c * c + rc * rc * sn * sn;
}

double transition_probability(const TwoLevelParams& p) {
  p.validate();
  return transition_probability(to_scaled(p));
}

double transition_probability_assembled(const TwoLevelParams& p) {
  p.validate();
  const ScaledParams s = to_scaled(p);
  const Complex a = monodromy_element_a(hyp_params(p, false));
  const Complex ap = monodromy_element_a(hyp_params(p, true));
  const double rho = std::hypot(s.eps1, s.v);
  const Complex x = a * std::exp(s.eps1 - rho) * std::exp(-kI * s.eps0);
  const Complex y = ap * std::exp(-s.eps1 - rho) * std::exp(kI * s.eps0);
  return std::norm(s.eps1 / (2.0 * rho) * (x + y) + 0.5 * (x - y));
}

Complex excited_amplitude(const TwoLevelParams& p) {
  p.validate();
  const HypParams h = hyp_params(p, false);
  const HypParams hp = hyp_params(p, true);
  const Complex a = monodromy_element_a(h);
  const Complex ap = monodromy_element_a(hp);
  const auto [A, Ap] = mixing_amplitudes(p.E1, p.V0);
  const double phi0 = phase_data(p).phi0;
  return a * A * A * std::exp(kI * kPi * h.alpha - 2.0 * kI * phi0) -
         ap * Ap * Ap * std::exp(kI * kPi * hp.alpha + 2.0 * kI * phi0);
}

double transition_probability_assembled_unscaled(const TwoLevelParams& p) {
  return std::norm(excited_amplitude(p));
}

ExtremalProbabilities extremal_probabilities(const TwoLevelParams& p) {
  TwoLevelParams q = p;
  q.E0 = 0.0;
  q.validate();
  const ScaledParams s = to_scaled(q);
  const double x = std::abs(s.eps1);
  const double rho = std::hypot(s.eps1, s.v);
  const double rs = sinh_ratio(x, rho);
  const double rc = cosh_ratio(x, rho);
  return {rs * rs, rc * rc};
}

LimitValue limit_formula(const TwoLevelParams& p, LimitKind which) {
  if (!(p.T > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep time T must be positive");
  switch (which) {
    case LimitKind::RosenZener: {
      if (p.E1 != 0.0) throw Error(ErrorCode::PreconditionViolated, "Rosen-Zener limit needs E1 = 0");
      const double s = std::sin(kPi * p.T * p.E0);
      const double c = std::cosh(kPi * p.T * p.V0);
      return {s * s / (c * c), std::nullopt};
    }
    case LimitKind::DemkovKunike: {
      if (p.E0 != 0.0) throw Error(ErrorCode::PreconditionViolated, "Demkov-Kunike limit needs E0 = 0");
      p.validate();
      const ScaledParams s = to_scaled(p);
      const double r = sinh_ratio(std::abs(s.eps1), std::hypot(s.eps1, s.v));
      return {r * r, std::nullopt};
    }
    case LimitKind::LandauZener: {
      if (!(p.E1 > 0.0)) throw Error(ErrorCode::PreconditionViolated, "Landau-Zener limit needs E1 > 0");
      const double base = kPi * p.V0 * p.V0 * p.T / p.E1;
      return {std::exp(-base / 2.0), std::exp(-base)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown limit");
}

LandauZenerComparison compare_landau_zener(const TwoLevelParams& p) {
  limit_formula(p, LimitKind::LandauZener);  // precondition check
  const double base = kPi * p.V0 * p.V0 * p.T / p.E1;
  LandauZenerComparison out;
  out.log_p = std::log(transition_probability(p));
  out.printed_exponent = -base / 2.0;
  out.asymptotic_exponent = -base;
  out.rel_err_printed = std::abs(out.log_p - out.printed_exponent) / std::abs(out.printed_exponent);
  out.rel_err_asymptotic =
      std::abs(out.log_p - out.asymptotic_exponent) / std::abs(out.asymptotic_exponent);
  out.ratio_printed = out.log_p / out.printed_exponent;
  out.asymptotic_preferred = out.rel_err_asymptotic < out.rel_err_printed;
  return out;
}

}  // namespace natmono
