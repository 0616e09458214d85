#include "natmono/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "natmono/error.hpp"
#include "natmono/monodromy.hpp"
#include "natmono/okubo.hpp"
#include "natmono/propagator.hpp"

namespace natmono {

bool SuiteReport::passed() const {
  return std::none_of(cases.begin(), cases.end(),
                      [](const CaseResult& c) { return c.status == CaseStatus::Fail; });
}

std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Info: return "info";
  }
  return "unknown";
}

namespace {

CaseResult bound(std::string name, double observed, double expected, double tol, std::string note = {}) {
  const bool ok = std::abs(observed - expected) <= tol;
  return {std::move(name), ok ? CaseStatus::Pass : CaseStatus::Fail, observed, expected, tol,
          std::move(note)};
}

CaseResult info(std::string name, double observed, double expected, std::string note) {
  return {std::move(name), CaseStatus::Info, observed, expected, 0.0, std::move(note)};
}

struct Draws {
  std::mt19937_64 rng;
  explicit Draws(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  TwoLevelParams two_level() {
    TwoLevelParams p;
    p.E0 = uniform(-1.5, 1.5);
    p.E1 = uniform(-1.5, 1.5);
    p.V0 = uniform(0.05, 1.5) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    p.T = uniform(0.3, 1.5);
    return p;
  }
};

double rel_dist(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Distance between the spectrum of m and {1, lambda}, relative to max(1, |.|).
double spectrum_error(const ComplexMatrix2& m, Complex lambda) {
  const auto [l1, l2] = eigenvalues(m);
  const double direct = std::max(rel_dist(l1, 1.0), rel_dist(l2, lambda));
  const double swapped = std::max(rel_dist(l2, 1.0), rel_dist(l1, lambda));
  return std::min(direct, swapped);
}

SuiteReport suite_monodromy(std::uint64_t seed) {
  Draws draws(seed);
  double spec_err = 0.0, det_err = 0.0, a_err = 0.0, flip_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const TwoLevelParams p = draws.two_level();
    const HypParams h = hyp_params(p);
    const MonodromyData md = global_monodromy(h);
    const Complex lambda = e_of(exponent_at_one(h));
    spec_err = std::max(spec_err, spectrum_error(md.Rtilde, lambda));
    det_err = std::max(det_err, rel_dist(md.Rtilde.determinant(), lambda));
    a_err = std::max(a_err, rel_dist(md.a, md.Rtilde(0, 0)));
    TwoLevelParams q = p;
    q.E0 = -p.E0;
    q.E1 = -p.E1;
    flip_err = std::max(flip_err, rel_dist(md.a_prime, monodromy_element_a(hyp_params(q))));
  }
  SuiteReport r{"monodromy", {}};
  r.cases.push_back(bound("rtilde_spectrum", spec_err, 0.0, 1e-10, "spectrum {1, e(gamma-alpha-beta)}"));
  r.cases.push_back(bound("rtilde_determinant", det_err, 0.0, 1e-12));
  r.cases.push_back(bound("closed_form_a_vs_rtilde11", a_err, 0.0, 1e-10));
  r.cases.push_back(bound("a_prime_sign_flip", flip_err, 0.0, 1e-12));
  return r;
}

SuiteReport suite_assembly(std::uint64_t seed) {
  Draws draws(seed);
  double worst = 0.0, worst_unscaled = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const TwoLevelParams p = draws.two_level();
    const double closed = transition_probability(p);
    worst = std::max(worst, std::abs(transition_probability_assembled(p) - closed));
    worst_unscaled = std::max(worst_unscaled, std::abs(transition_probability_assembled_unscaled(p) - closed));
  }
  SuiteReport r{"assembly", {}};
  r.cases.push_back(bound("scaled_assembly_vs_closed_form", worst, 0.0, 1e-10));
  r.cases.push_back(bound("unscaled_assembly_vs_closed_form", worst_unscaled, 0.0, 1e-10));
  return r;
}

SuiteReport suite_numeric_monodromy(std::uint64_t seed) {
  Draws draws(seed);
  double a_err = 0.0, tr_err = 0.0, inv_err = 0.0;
  for (int k = 0; k < 6; ++k) {
    TwoLevelParams p{draws.uniform(-1, 1), draws.uniform(-1, 1), draws.uniform(0.2, 1.0), 1.0};
    const HypParams h = hyp_params(p);
    const ComplexMatrix2 num = numeric_monodromy(h);
    const Complex a = monodromy_element_a(h);
    a_err = std::max(a_err, rel_dist(num(0, 0), a));
    tr_err = std::max(tr_err, rel_dist(num.trace(), 1.0 + e_of(exponent_at_one(h))));
    NumericMonodromyOptions rev;
    rev.orientation = LoopOrientation::Clockwise;
    const ComplexMatrix2 back = numeric_monodromy(h, {1e-12, 1e-14}, rev);
    inv_err = std::max(inv_err, (num * back - ComplexMatrix2::Identity()).cwiseAbs().maxCoeff());
  }
  SuiteReport r{"numeric_monodromy", {}};
  r.cases.push_back(bound("numeric_r11_vs_closed_form_a", a_err, 0.0, 1e-6));
  r.cases.push_back(bound("numeric_trace", tr_err, 0.0, 1e-6));
  r.cases.push_back(bound("reversed_loop_is_inverse", inv_err, 0.0, 1e-6));
  return r;
}

SuiteReport suite_propagator(std::uint64_t seed) {
  Draws draws(seed);
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const ScaledParams s{draws.uniform(0.0, 2.5), draws.uniform(-2.0, 2.0), draws.uniform(0.2, 2.0)};
    const TwoLevelParams p = from_scaled(s);
    worst = std::max(worst, std::abs(propagate(Model{p}).probability - transition_probability(p)));
  }
  SuiteReport r{"propagator", {}};
  r.cases.push_back(bound("ode_oracle_vs_closed_form", worst, 0.0, 1e-6));
  const TwoLevelParams rz_zero{1.0, 0.0, 0.7, 1.0};  // pi T E0 = pi
  r.cases.push_back(bound("rosen_zener_zero", propagate(Model{rz_zero}).probability, 0.0, 1e-6));
  const TwoLevelParams decoupled{0.3, 0.8, 0.0, 1.0};
  r.cases.push_back(bound("decoupled_full_transition", propagate(Model{decoupled}).probability, 1.0, 1e-6));
  return r;
}

SuiteReport suite_class_invariance(std::uint64_t) {
  const SweepCoefficients coeffs{1.0 / kPi, 1.0 / kPi, 1.0 / kPi};
  PropagationConfig cfg;
  cfg.integrator = {1e-12, 1e-14};
  const InvarianceReport rep = class_invariance_check(
      coeffs, {ProfileKind::Sinh, ProfileKind::Linear, ProfileKind::LinearCubic}, cfg);
  SuiteReport r{"class_invariance", {}};
  r.cases.push_back(bound("class1_profiles_pairwise", rep.max_pairwise_diff, 0.0, rep.tolerance));
  const double closed = transition_probability(from_scaled({1.0, 1.0, 1.0}));
  r.cases.push_back(bound("class1_matches_closed_form", rep.probabilities.front(), closed, 1e-6));
  const InvarianceReport rep2 = class_invariance_check(
      coeffs, {ProfileKind::Sinh, ProfileKind::Linear, ProfileKind::LinearCubic}, cfg, ModelClass::Class2);
  r.cases.push_back(bound("class2_profiles_pairwise", rep2.max_pairwise_diff, 0.0, rep2.tolerance));
  return r;
}

SuiteReport suite_okubo(std::uint64_t seed) {
  Draws draws(seed);
  SuiteReport r{"okubo", {}};
  const IntegratorConfig cfg{1e-12, 1e-14};
  for (int n : {2, 3, 4}) {
    MultiLevelParams p;
    p.E1 = draws.uniform(-1.0, 1.0);
    p.T = draws.uniform(0.5, 1.5);
    for (int j = 1; j < n; ++j) p.couplings.push_back(draws.uniform(0.2, 1.0));
    std::vector<double> lam_a(n - 1, 1.0 / (n - 1));
    std::vector<double> lam_b(n - 1, 0.0);
    lam_b.front() = 1.0;
    const auto traj = schrodinger_trajectory(p, -10.0 * p.T, 10.0 * p.T, cfg);
    const double res = okubo_residual(build_okubo(p, lam_a), p, traj);
    r.cases.push_back(bound("residual_N" + std::to_string(n), res, 0.0, 1e-6));
    const auto li = lambda_independence_check(p, lam_a, lam_b, cfg);
    r.cases.push_back(bound("lambda_independence_N" + std::to_string(n), li.max_diff, 0.0, li.tolerance));
    r.cases.push_back(
        bound("okubo_vs_schrodinger_N" + std::to_string(n), li.max_diff_direct, 0.0, li.tolerance));
  }
  // N = 2: H = ((E1 tanh, V), (V, 0)) is the two-level model with E1/2 up to a
  // multiple of the identity.
  const MultiLevelParams two{0.8, 1.0, {0.6}};
  const double dk = limit_formula(TwoLevelParams{0.0, 0.4, 0.6, 1.0}, LimitKind::DemkovKunike).value;
  r.cases.push_back(bound("N2_matches_demkov_kunike", okubo_transition_probability(two, {1.0}, cfg), dk, 1e-6));
  return r;
}

SuiteReport suite_limits(std::uint64_t seed) {
  Draws draws(seed);
  double rz = 0.0, dk = 0.0;
  for (int k = 0; k < 200; ++k) {
    TwoLevelParams p = draws.two_level();
    p.E1 = 0.0;
    rz = std::max(rz, std::abs(transition_probability(p) - limit_formula(p, LimitKind::RosenZener).value));
    p = draws.two_level();
    p.E0 = 0.0;
    dk = std::max(dk, std::abs(transition_probability(p) - limit_formula(p, LimitKind::DemkovKunike).value));
  }
  SuiteReport r{"limits", {}};
  r.cases.push_back(bound("rosen_zener_identity", rz, 0.0, 1e-15));
  r.cases.push_back(bound("demkov_kunike_identity", dk, 0.0, 1e-15));
  for (double e1t : {10.0, 20.0, 40.0}) {
    const LandauZenerComparison cmp = compare_landau_zener(TwoLevelParams{0.0, e1t, 1.0, 1.0});
    const std::string tag = "E1T_" + std::to_string(static_cast<int>(e1t));
    r.cases.push_back(bound("landau_zener_asymptotic_exponent_" + tag, cmp.rel_err_asymptotic, 0.0, 0.02,
                            "ln P vs -pi V0^2 T / E1"));
    r.cases.push_back(info("landau_zener_printed_exponent_ratio_" + tag, cmp.ratio_printed, 1.0,
                           "ln P / (-pi V0^2 T / (2 E1)); about 2 means the printed factor 1/2 does not match"));
  }
  return r;
}

using SuiteFn = std::function<SuiteReport(std::uint64_t)>;

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"monodromy", suite_monodromy},
      {"assembly", suite_assembly},
      {"numeric_monodromy", suite_numeric_monodromy},
      {"propagator", suite_propagator},
      {"class_invariance", suite_class_invariance},
      {"okubo", suite_okubo},
      {"limits", suite_limits},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"monodromy",  "assembly",         "numeric_monodromy",
                                              "propagator", "class_invariance", "okubo",
                                              "limits"};
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
  try {
    return it->second(seed);
  } catch (const std::exception& ex) {
    SuiteReport r{std::string(name), {}};
    r.cases.push_back({"exception", CaseStatus::Fail, 0.0, 0.0, 0.0, ex.what()});
    return r;
  }
}

SuiteReport merge_reports(const std::vector<SuiteReport>& reports) {
  SuiteReport all{"all", {}};
  for (const auto& rep : reports)
    for (auto c : rep.cases) {
      c.name = rep.suite + "/" + c.name;
      all.cases.push_back(std::move(c));
    }
  return all;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json j{{"name", c.name},
                     {"status", std::string(to_string(c.status))},
                     {"observed", c.observed},
                     {"expected", c.expected},
                     {"tolerance", c.tolerance}};
    if (!c.note.empty()) j["note"] = c.note;
    cases.push_back(std::move(j));
  }
  return {{"suite", report.suite}, {"passed", report.passed()}, {"cases", std::move(cases)}};
}

}  // namespace natmono
