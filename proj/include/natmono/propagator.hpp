#pragma once

#include <variant>
#include <vector>

#include "natmono/integrator.hpp"
#include "natmono/models.hpp"

namespace natmono {

using Model = std::variant<TwoLevelParams, SweepModel, MultiLevelParams>;

struct PropagationConfig {
  double t_max_factor = 40.0;  // t_max = t_max_factor * T
  double tol = 1e-8;
  IntegratorConfig integrator{1e-10, 1e-12};
  /// Sweep families approach their asymptotes algebraically in y, so t_max is
  /// also extended until |y(t_max)| reaches this value.
  double y_asymptote = 1e12;
  double max_norm_drift = 1e-8;

  void validate() const;
};

struct PropagationResult {
  StateVector final_state;
  /// Population that left the instantaneous ground state; for two levels this
  /// is the projection onto the excited state of H(+t_max).
  double probability = 0.0;
  /// |<phi_k|Psi>|^2 for the eigenstates of H(+t_max), ascending energy.
  std::vector<double> populations;
  std::vector<double> final_energies;
  double norm_drift = 0.0;
  double t_max_used = 0.0;
  /// Rough size of the error from preparing and projecting at finite t_max.
  double preparation_error = 0.0;
  bool trusted = false;
  IntegrationStats stats;
};

ComplexMatrix hamiltonian(const Model& model, double t);
int dimension(const Model& model);
double time_scale(const Model& model);
void validate(const Model& model);

double t_max_for(const Model& model, const PropagationConfig& cfg);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
  Eigen::VectorXd values;
  ComplexMatrix vectors;  // columns
};
EigenSystem eigen_hermitian(const ComplexMatrix& h);

/// i dPsi/dt = H(t) Psi from t0 to t1. The observer sees every accepted step.
ComplexVector evolve(const Model& model, const ComplexVector& psi0, double t0, double t1,
                     const IntegratorConfig& cfg, const StepObserver& observer = {},
                     IntegrationStats* stats = nullptr);

/// Starts in the ground state of H(-t_max), evolves to +t_max and projects on
/// the eigenstates of H(+t_max). Throws NormDriftExceeded when the norm drifts
/// more than cfg.max_norm_drift.
PropagationResult propagate(const Model& model, const PropagationConfig& cfg = {});

struct SweepCoefficients {
  double E0T = 0.0;
  double E1T = 0.0;
  double V0T = 0.0;
};

struct InvarianceReport {
  std::vector<ProfileKind> profiles;
  std::vector<double> probabilities;
  double max_pairwise_diff = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Propagates each profile of the chosen family with the same coefficients and
/// checks pairwise agreement within 5 * cfg.tol.
InvarianceReport class_invariance_check(const SweepCoefficients& coeffs,
                                        const std::vector<ProfileKind>& profiles,
                                        const PropagationConfig& cfg = {},
                                        ModelClass model_class = ModelClass::Class1);

}  // namespace natmono
