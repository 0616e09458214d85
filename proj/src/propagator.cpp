#include "natmono/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "natmono/error.hpp"

namespace natmono {

void PropagationConfig::validate() const {
  if (!(t_max_factor >= 10.0)) throw Error(ErrorCode::InvalidArgument, "t_max_factor must be >= 10");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!(y_asymptote > 1.0)) throw Error(ErrorCode::InvalidArgument, "y_asymptote must exceed 1");
  integrator.validate();
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ComplexMatrix hamiltonian(const Model& model, double t) {
  return std::visit(overloaded{[t](const TwoLevelParams& p) -> ComplexMatrix { return hamiltonian_at(p, t); },
                               [t](const SweepModel& m) -> ComplexMatrix { return hamiltonian_at(m, t); },
                               [t](const MultiLevelParams& p) { return multilevel_hamiltonian(p, t); }},
                    model);
}

int dimension(const Model& model) {
  return std::visit(overloaded{[](const TwoLevelParams&) { return 2; },
                               [](const SweepModel&) { return 2; },
                               [](const MultiLevelParams& p) { return p.levels(); }},
                    model);
}

double time_scale(const Model& model) {
  return std::visit(overloaded{[](const TwoLevelParams& p) { return p.T; },
                               [](const SweepModel& m) { return m.profile.T; },
                               [](const MultiLevelParams& p) { return p.T; }},
                    model);
}

void validate(const Model& model) {
  std::visit(overloaded{[](const TwoLevelParams& p) { p.validate(); },
                        [](const SweepModel& m) {
                          if (!(m.profile.T > 0.0))
                            throw Error(ErrorCode::InvalidArgument, "profile T must be positive");
                          const bool coupled = m.V0T != 0.0;
                          if (m.E1T == 0.0 && !coupled)
                            throw Error(ErrorCode::DegenerateAsymptote, "E1 = V0 = 0");
                          if (m.model_class == ModelClass::Class2 && m.E1T == 0.0)
                            throw Error(ErrorCode::DegenerateAsymptote,
                                        "class-2 asymptotes vanish for E1 = 0");
                        },
                        [](const MultiLevelParams& p) {
                          p.validate();
                          const bool coupled = std::any_of(p.couplings.begin(), p.couplings.end(),
                                                           [](double v) { return v != 0.0; });
                          if (!coupled && p.E1 == 0.0)
                            throw Error(ErrorCode::DegenerateAsymptote, "E1 = 0 and all V_j = 0");
                        }},
             model);
}

double t_max_for(const Model& model, const PropagationConfig& cfg) {
  const double base = cfg.t_max_factor * time_scale(model);
  if (const auto* m = std::get_if<SweepModel>(&model))
    return std::max(base, m->profile.inverse(cfg.y_asymptote));
  return base;
}

EigenSystem eigen_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NonConvergence, "Hermitian eigen-decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexVector evolve(const Model& model, const ComplexVector& psi0, double t0, double t1,
                     const IntegratorConfig& cfg, const StepObserver& observer,
                     IntegrationStats* stats) {
  const CoefficientFn rhs = [&model](Complex z) -> ComplexMatrix {
    return -kI * hamiltonian(model, z.real());
  };
  return integrate_linear_ode(rhs, psi0, t0, t1, cfg, observer, stats);
}

namespace {

double preparation_estimate(const Model& model, double t_max) {
  return std::visit(
      overloaded{[t_max](const TwoLevelParams& p) {
                   return (std::abs(p.E0) + std::abs(p.E1)) * p.T * std::exp(-t_max / p.T);
                 },
                 [t_max](const SweepModel& m) {
                   const double y = std::abs(m.profile.kind == ProfileKind::Sinh && t_max / m.profile.T > 700.0
                                                 ? 1e300
                                                 : m.profile.y(t_max));
                   return (std::abs(m.E0T) + std::abs(m.E1T) + std::abs(m.V0T)) / y;
                 },
                 [t_max](const MultiLevelParams& p) {
                   return std::abs(p.E1) * p.T * std::exp(-2.0 * t_max / p.T);
                 }},
      model);
}

}  // namespace

PropagationResult propagate(const Model& model, const PropagationConfig& cfg) {
  cfg.validate();
  validate(model);
  const double t_max = t_max_for(model, cfg);

  const EigenSystem initial = eigen_hermitian(hamiltonian(model, -t_max));
  const ComplexVector psi0 = initial.vectors.col(0);

  double drift = 0.0;
  const StepObserver track = [&drift](Complex, const ComplexMatrix& y) {
    drift = std::max(drift, std::abs(y.squaredNorm() - 1.0));
  };
  PropagationResult out;
  const ComplexVector psi = evolve(model, psi0, -t_max, t_max, cfg.integrator, track, &out.stats);

  const EigenSystem final_sys = eigen_hermitian(hamiltonian(model, t_max));
  const ComplexVector overlaps = final_sys.vectors.adjoint() * psi;
  out.final_state = StateVector{psi, true};
  out.populations.resize(overlaps.size());
  out.final_energies.resize(overlaps.size());
  double excited = 0.0;
  for (Eigen::Index k = 0; k < overlaps.size(); ++k) {
    out.populations[k] = std::norm(overlaps[k]);
    out.final_energies[k] = final_sys.values[k];
    if (k > 0) excited += out.populations[k];
  }
  out.probability = std::clamp(excited, 0.0, 1.0);
  out.norm_drift = drift;
  out.t_max_used = t_max;
  out.preparation_error = preparation_estimate(model, t_max);
  out.trusted = drift < cfg.max_norm_drift;
  if (!out.trusted)
    throw Error(ErrorCode::NormDriftExceeded, "norm drift " + std::to_string(drift) + " exceeds limit");
  return out;
}

InvarianceReport class_invariance_check(const SweepCoefficients& coeffs,
                                        const std::vector<ProfileKind>& profiles,
                                        const PropagationConfig& cfg, ModelClass model_class) {
  if (profiles.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one profile");
  InvarianceReport report;
  report.profiles = profiles;
  report.tolerance = 5.0 * cfg.tol;
  for (ProfileKind kind : profiles) {
    const SweepModel m{model_class, SweepProfile{kind, 1.0}, coeffs.E0T, coeffs.E1T, coeffs.V0T};
    report.probabilities.push_back(propagate(m, cfg).probability);
  }
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j)
      report.max_pairwise_diff = std::max(
          report.max_pairwise_diff, std::abs(report.probabilities[i] - report.probabilities[j]));
  report.passed = report.max_pairwise_diff <= report.tolerance;
  return report;
}

}  // namespace natmono
