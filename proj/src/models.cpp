#include "natmono/models.hpp"

#include <cmath>
#include <string>

#include "natmono/error.hpp"

namespace natmono {

void TwoLevelParams::validate() const {
  if (!std::isfinite(E0) || !std::isfinite(E1) || !std::isfinite(V0) || !std::isfinite(T))
    throw Error(ErrorCode::InvalidArgument, "model parameters must be finite");
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep time T must be positive");
  if (E1 == 0.0 && V0 == 0.0)
    throw Error(ErrorCode::DegenerateAsymptote, "E1 = V0 = 0 leaves the asymptotic Hamiltonian degenerate");
}

ScaledParams to_scaled(const TwoLevelParams& p) {
  return {kPi * p.T * p.E0, kPi * p.T * p.E1, kPi * p.T * p.V0};
}

TwoLevelParams from_scaled(const ScaledParams& s, double T) {
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep time T must be positive");
  return {s.eps0 / (kPi * T), s.eps1 / (kPi * T), s.v / (kPi * T), T};
}

std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::Sinh: return "sinh";
    case ProfileKind::Linear: return "linear";
    case ProfileKind::LinearCubic: return "linear_cubic";
  }
  return "unknown";
}

ProfileKind profile_from_string(std::string_view name) {
  if (name == "sinh") return ProfileKind::Sinh;
  if (name == "linear") return ProfileKind::Linear;
  if (name == "linear_cubic") return ProfileKind::LinearCubic;
  throw Error(ErrorCode::InvalidArgument, "unknown sweep profile '" + std::string(name) + "'");
}

double SweepProfile::y(double t) const {
  const double u = t / T;
  switch (kind) {
    case ProfileKind::Sinh: return std::sinh(u);
    case ProfileKind::Linear: return u;
    case ProfileKind::LinearCubic: return u + u * u * u;
  }
  return 0.0;
}

double SweepProfile::dy(double t) const {
  const double u = t / T;
  switch (kind) {
    case ProfileKind::Sinh: return std::cosh(u) / T;
    case ProfileKind::Linear: return 1.0 / T;
    case ProfileKind::LinearCubic: return (1.0 + 3.0 * u * u) / T;
  }
  return 0.0;
}

double SweepProfile::inverse(double target) const {
  if (target <= 0.0) return 0.0;
  switch (kind) {
    case ProfileKind::Sinh: return T * std::asinh(target);
    case ProfileKind::Linear: return T * target;
    case ProfileKind::LinearCubic: {
      // Real root of u^3 + u - target = 0 (Cardano, single real root).
      const double q = 0.5 * target;
      const double disc = std::sqrt(q * q + 1.0 / 27.0);
      return T * (std::cbrt(q + disc) + std::cbrt(q - disc));
    }
  }
  return 0.0;
}

void MultiLevelParams::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
  if (couplings.empty()) throw Error(ErrorCode::InvalidArgument, "multi-level model needs N >= 2");
  if (!std::isfinite(E1)) throw Error(ErrorCode::InvalidArgument, "E1 must be finite");
  for (double v : couplings)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "couplings must be finite");
}

namespace {

ComplexMatrix2 two_by_two(double eps, double v) {
  ComplexMatrix2 h;
  h << eps, v, v, -eps;
  return h;
}

}  // namespace

ComplexMatrix2 hamiltonian_at(const TwoLevelParams& p, double t) {
  const double u = t / p.T;
  return two_by_two(p.E0 / std::cosh(u) + p.E1 * std::tanh(u), p.V0);
}

ComplexMatrix2 hamiltonian_at(const SweepModel& m, double t) {
  const SweepProfile& prof = m.profile;
  const double u = t / prof.T;
  // w_sech = y'/(1+y^2), w_tanh = y y'/(1+y^2), w_root = y'/sqrt(1+y^2).
  double w_sech = 0.0, w_tanh = 0.0, w_root = 0.0;
  if (prof.kind == ProfileKind::Sinh && std::abs(u) > 20.0) {
    // cosh/sinh overflow long before the ratios do; use the closed forms.
    w_sech = 1.0 / (std::cosh(u) * prof.T);
    w_tanh = std::tanh(u) / prof.T;
    w_root = 1.0 / prof.T;
  } else {
    const double y = prof.y(t);
    const double dy = prof.dy(t);
    const double one_plus = 1.0 + y * y;
    w_sech = dy / one_plus;
    w_tanh = y * dy / one_plus;
    w_root = dy / std::sqrt(one_plus);
  }
  const double eps = m.E0T * w_sech + m.E1T * w_tanh;
  const double v = m.model_class == ModelClass::Class1 ? m.V0T * w_root : m.V0T * w_sech;
  return two_by_two(eps, v);
}

ComplexMatrix multilevel_hamiltonian(const MultiLevelParams& p, double t) {
  const int n = p.levels();
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  h(0, 0) = p.E1 * std::tanh(t / p.T);
  for (int j = 1; j < n; ++j) {
    h(0, j) = p.couplings[j - 1];
    h(j, 0) = p.couplings[j - 1];
  }
  return h;
}

ComplexMatrix2 asymptotic_hamiltonian(const TwoLevelParams& p, Asymptote side) {
  const double s = side == Asymptote::MinusInfinity ? -1.0 : 1.0;
  return two_by_two(s * p.E1, p.V0);
}

MixingAmplitudes mixing_amplitudes(double E1, double V0) {
  const double r = std::hypot(E1, V0);
  if (r == 0.0) throw Error(ErrorCode::DegenerateAsymptote, "E1 = V0 = 0");
  // A^2 = (E1 + r)/(2r), A'^2 = (r - E1)/(2r); one of the two numerators is
  // computed via V0^2/(r +- E1) to avoid cancellation.
  double A2 = 0.0, Ap2 = 0.0;
  if (E1 >= 0.0) {
    A2 = (E1 + r) / (2.0 * r);
    Ap2 = V0 * V0 / ((E1 + r) * 2.0 * r);
  } else {
    Ap2 = (r - E1) / (2.0 * r);
    A2 = V0 * V0 / ((r - E1) * 2.0 * r);
  }
  return {std::sqrt(A2), std::sqrt(Ap2)};
}

namespace {

AsymptoticState make_state(Complex first, Complex second, double energy) {
  StateVector sv{ComplexVector(2), true};
  sv.amplitudes << first, second;
  return {sv, energy};
}

}  // namespace

AsymptoticState asymptotic_ground_state(const TwoLevelParams& p, Asymptote side) {
  const auto [A, Ap] = mixing_amplitudes(p.E1, p.V0);
  const double s = p.V0 < 0.0 ? -1.0 : 1.0;
  const double r = std::hypot(p.E1, p.V0);
  if (side == Asymptote::MinusInfinity) return make_state(A, -s * Ap, -r);
  return make_state(s * Ap, -A, -r);
}

AsymptoticState asymptotic_excited_state(const TwoLevelParams& p, Asymptote side) {
  const auto [A, Ap] = mixing_amplitudes(p.E1, p.V0);
  const double s = p.V0 < 0.0 ? -1.0 : 1.0;
  const double r = std::hypot(p.E1, p.V0);
  if (side == Asymptote::PlusInfinity) return make_state(A, s * Ap, r);
  return make_state(s * Ap, A, r);
}

}  // namespace natmono
