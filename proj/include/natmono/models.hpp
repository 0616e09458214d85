#pragma once

#include <string_view>
#include <vector>

#include "natmono/numerics.hpp"

namespace natmono {

/// Two-level model with eps(t) = E0 sech(t/T) + E1 tanh(t/T) and V(t) = V0.
/// Units have hbar = 1.
struct TwoLevelParams {
  double E0 = 0.0;
  double E1 = 0.0;
  double V0 = 0.0;
  double T = 1.0;

  /// Throws InvalidArgument for T <= 0 / non-finite values and
  /// DegenerateAsymptote when E1 = V0 = 0.
  void validate() const;
};

/// (eps0, eps1, v) = pi T (E0, E1, V0).
struct ScaledParams {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double v = 0.0;
};

ScaledParams to_scaled(const TwoLevelParams& p);
TwoLevelParams from_scaled(const ScaledParams& s, double T = 1.0);

enum class ProfileKind { Sinh, Linear, LinearCubic };
enum class ModelClass { Class1, Class2 };

std::string_view to_string(ProfileKind k);
ProfileKind profile_from_string(std::string_view name);

/// Named monotone sweep y(t) with y(+-inf) = +-inf and exact derivative.
struct SweepProfile {
  ProfileKind kind = ProfileKind::Sinh;
  double T = 1.0;

  double y(double t) const;
  double dy(double t) const;
  /// Smallest t >= 0 with y(t) >= target (all profiles are odd and increasing).
  double inverse(double target) const;
};

/// Member of the class-1 or class-2 families. Coefficients are the products
/// E0*T, E1*T, V0*T appearing in the family definition.
struct SweepModel {
  ModelClass model_class = ModelClass::Class1;
  SweepProfile profile;
  double E0T = 0.0;
  double E1T = 0.0;
  double V0T = 0.0;
};

struct MultiLevelParams {
  double E1 = 0.0;
  double T = 1.0;
  std::vector<double> couplings;  // V_2 ... V_N

  int levels() const noexcept { return static_cast<int>(couplings.size()) + 1; }
  void validate() const;
};

/// Amplitude vector; `normalized` marks vectors expected to have unit norm.
struct StateVector {
  ComplexVector amplitudes;
  bool normalized = true;

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

ComplexMatrix2 hamiltonian_at(const TwoLevelParams& p, double t);
ComplexMatrix2 hamiltonian_at(const SweepModel& m, double t);
ComplexMatrix multilevel_hamiltonian(const MultiLevelParams& p, double t);

enum class Asymptote { MinusInfinity, PlusInfinity };

/// H(t -> -inf) = ((-E1, V0), (V0, E1)); H(t -> +inf) = ((E1, V0), (V0, -E1)).
ComplexMatrix2 asymptotic_hamiltonian(const TwoLevelParams& p, Asymptote side);

/// A and A' of the asymptotic eigenvectors; A^2 + A'^2 = 1.
struct MixingAmplitudes {
  double A = 0.0;
  double A_prime = 0.0;
};
MixingAmplitudes mixing_amplitudes(double E1, double V0);

struct AsymptoticState {
  StateVector state;
  double energy = 0.0;
};

/// Ground state at -inf, (A, -A'), energy -sqrt(E1^2 + V0^2); excited state at
/// +inf, (A, A'), energy +sqrt(E1^2 + V0^2). For V0 < 0 the A' component
/// carries sign(V0) so the vectors stay eigenvectors.
AsymptoticState asymptotic_ground_state(const TwoLevelParams& p, Asymptote side);
AsymptoticState asymptotic_excited_state(const TwoLevelParams& p, Asymptote side);

}  // namespace natmono
