#pragma once

#include <optional>

#include "natmono/contour.hpp"
#include "natmono/integrator.hpp"
#include "natmono/models.hpp"
#include "natmono/numerics.hpp"

namespace natmono {

/// Parameters (alpha, beta, gamma) of z(1-z)c'' + (gamma - (1+alpha+beta)z)c' - alpha beta c = 0.
struct HypParams {
  Complex alpha;
  Complex beta;
  Complex gamma;
};

/// Unprimed triple belongs to c1; the primed triple (for c2) follows from
/// E0 -> -E0, E1 -> -E1.
HypParams hyp_params(const TwoLevelParams& p, bool primed = false);

/// Primed partner expressed through the unprimed triple of a physical model:
/// (alpha', beta', gamma') = (-beta, -alpha, 1 - gamma).
HypParams primed_partner(const HypParams& h);

/// Exponent gamma - alpha - beta of the local monodromy at z = 1.
inline Complex exponent_at_one(const HypParams& h) { return h.gamma - h.alpha - h.beta; }

/// S with (F_01, F_zinf) = (F_inf0, F_1z) S. Throws SingularConnection when
/// |e(-alpha) - e(beta - gamma)| < 1e-13.
ComplexMatrix2 connection_matrix_S(const HypParams& h);

/// Gamma = diag(1, e(gamma - alpha - beta)).
ComplexMatrix2 local_monodromy_Gamma(const HypParams& h);

/// Closed-form (1,1) element of S^-1 Gamma S.
Complex monodromy_element_a(const HypParams& h);

struct MonodromyData {
  ComplexMatrix2 S;
  ComplexMatrix2 Gamma;
  ComplexMatrix2 Rtilde;
  Complex a;
  Complex a_prime;
};

/// Rtilde = S^-1 Gamma S together with the closed-form a and a'. The closed
/// form is cross-checked against Rtilde(0,0); a mismatch beyond 1e-10
/// (relative to max(1, |a|)) throws std::logic_error.
MonodromyData global_monodromy(const HypParams& h);

/// f_inf(z; alpha) and f_inf(z; beta) as the columns of the 2x2 matrix
/// ((f, g), (f', g')). Requires |z| > 1. z^-alpha is taken on the principal
/// branch, which agrees with arg z = pi/2 continuity on the upper half of the
/// line Re z = 1/2.
ComplexMatrix2 fundamental_matrix_at_infinity(const HypParams& h, Complex z);

/// dY/dz = M(z) Y for Y = (c, c')^T of the hypergeometric equation.
ComplexMatrix hypergeometric_system(const HypParams& h, Complex z);

enum class LoopOrientation { Counterclockwise, Clockwise };

struct NumericMonodromyOptions {
  /// Basis point for f_inf; continued down Re z = 1/2 to the loop base 1/2.
  Complex basis_point{0.5, 2.0};
  Complex base_point{0.5, 0.0};
  double loop_radius = 0.6;
  LoopOrientation orientation = LoopOrientation::Counterclockwise;
};

/// Default loop: basis point -> base point -> circle of radius `loop_radius`
/// around z = 1 -> back. The straight legs to and from the circle are retraced,
/// so only the encircling of z = 1 contributes.
ContourPath default_monodromy_loop(const NumericMonodromyOptions& opts = {});

/// Monodromy in the (f_inf(alpha), f_inf(beta)) basis for an arbitrary closed
/// loop that starts and ends at `basis_point`: continuation(Phi) = Phi R.
ComplexMatrix2 monodromy_along(const HypParams& h, const ContourPath& loop, Complex basis_point,
                               const IntegratorConfig& cfg);

/// Numerically continued monodromy around z = 1 (the path C1).
ComplexMatrix2 numeric_monodromy(const HypParams& h, const IntegratorConfig& cfg = {1e-12, 1e-14},
                                 const NumericMonodromyOptions& opts = {});

struct PhaseData {
  double phi0 = 0.0;       // T E0 pi / 2
  double phi1 = 0.0;       // T E1 ln 2
  Complex varphi1;         // i varphi1 = 2 alpha ln 2
  Complex varphi1_prime;   // i varphi1' = 2 alpha' ln 2
  double varphi = 0.0;     // arbitrary global phase, fixed to zero
};

PhaseData phase_data(const TwoLevelParams& p);

/// Coefficients of c1 = A1 f_inf(z; alpha) and c2 = B1 f_inf(z; alpha') that
/// reproduce the ground state at t -> -inf (A2 = B2 = 0).
struct InitialCoefficients {
  Complex A1;
  Complex A2;
  Complex B1;
  Complex B2;
  PhaseData phases;
};

InitialCoefficients initial_coefficients(const TwoLevelParams& p);

/// Closed-form transition probability.
double transition_probability(const TwoLevelParams& p);
double transition_probability(const ScaledParams& s);

/// Same probability assembled from the monodromy elements a, a', the mixing
/// amplitudes and phi0 in scaled variables.
double transition_probability_assembled(const TwoLevelParams& p);

/// |a A^2 e^{i pi alpha - 2 i phi0} - a' A'^2 e^{i pi alpha' + 2 i phi0}|^2 before
/// the change to scaled variables.
double transition_probability_assembled_unscaled(const TwoLevelParams& p);

/// Final-state amplitude on the excited asymptotic state (up to e^{-i r t}).
Complex excited_amplitude(const TwoLevelParams& p);

struct ExtremalProbabilities {
  double p_min = 0.0;  // at pi T E0 = n pi
  double p_max = 0.0;  // at pi T E0 = (n + 1/2) pi
};

/// E0 is ignored.
ExtremalProbabilities extremal_probabilities(const TwoLevelParams& p);

enum class LimitKind { RosenZener, DemkovKunike, LandauZener };

struct LimitValue {
  double value = 0.0;
  /// Landau-Zener only: exp(-pi V0^2 T / E1), the E1 T -> inf asymptote of
  /// the closed form, next to the printed exp(-pi V0^2 T / (2 E1)) in value.
  std::optional<double> alternative;
};

/// Requires E1 = 0 (Rosen-Zener), E0 = 0 (Demkov-Kunike) or E1 > 0
/// (Landau-Zener); throws PreconditionViolated otherwise.
LimitValue limit_formula(const TwoLevelParams& p, LimitKind which);

/// Which Landau-Zener exponent the closed form follows at large E1 T.
struct LandauZenerComparison {
  double log_p = 0.0;               // ln P from the closed form
  double printed_exponent = 0.0;    // -pi V0^2 T / (2 E1)
  double asymptotic_exponent = 0.0; // -pi V0^2 T / E1
  double rel_err_printed = 0.0;
  double rel_err_asymptotic = 0.0;
  double ratio_printed = 0.0;       // log_p / printed_exponent
  bool asymptotic_preferred = false;
};

LandauZenerComparison compare_landau_zener(const TwoLevelParams& p);

}  // namespace natmono
