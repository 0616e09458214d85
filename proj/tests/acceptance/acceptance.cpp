// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "natmono/monodromy.hpp"
#include "natmono/okubo.hpp"
#include "natmono/propagator.hpp"
#include "natmono/sweep.hpp"

using namespace natmono;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TwoLevelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5), t(0.3, 1.5);
  TwoLevelParams p{u(rng), u(rng), u(rng), t(rng)};
  if (std::abs(p.V0) < 0.05) p.V0 = std::copysign(0.05, p.V0);
  return p;
}

Outcome closed_form_vs_oracle() {
  const std::vector<double> grid{0.2, 0.5, 1.0, 2.0};
  std::vector<ScaledParams> points;
  for (double a : grid)
    for (double b : grid)
      for (double c : grid) points.push_back({a, b, c});
  const auto start = std::chrono::steady_clock::now();
  const auto diffs = parallel_map(static_cast<int>(points.size()), default_worker_count(), [&](int i) {
    const TwoLevelParams p = from_scaled(points[i]);
    return std::abs(propagate(Model{p}).probability - transition_probability(p));
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, d);
  return {worst < 1e-6 && secs < 60.0,
          "64 grid points, max |diff| " + sci(worst) + ", " + sci(secs) + " s"};
}

Outcome assembly_consistency() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const TwoLevelParams p = random_params(rng);
    worst = std::max(worst, std::abs(transition_probability_assembled(p) - transition_probability(p)));
  }
  return {worst < 1e-10, "1000 draws, max |diff| " + sci(worst)};
}

Outcome monodromy_element() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), v(0.2, 1.2);
  double worst_a = 0.0;
  for (int k = 0; k < 20; ++k) {
    const HypParams h = hyp_params(TwoLevelParams{u(rng), u(rng), v(rng), 1.0});
    worst_a = std::max(worst_a, rel(numeric_monodromy(h)(0, 0), monodromy_element_a(h)));
  }
  double worst_spec = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const HypParams h = hyp_params(random_params(rng));
    const MonodromyData md = global_monodromy(h);
    const Complex lambda = e_of(exponent_at_one(h));
    const auto [l1, l2] = eigenvalues(md.Rtilde);
    worst_spec = std::max(worst_spec, std::min(std::max(rel(l1, 1.0), rel(l2, lambda)),
                                               std::max(rel(l2, 1.0), rel(l1, lambda))));
  }
  return {worst_a < 1e-6 && worst_spec < 1e-10,
          "numeric R11 max rel err " + sci(worst_a) + " (20 draws), spectrum max err " + sci(worst_spec) +
              " (2000 draws)"};
}

Outcome limit_reproduction(LimitKind kind) {
  std::mt19937_64 rng(kind == LimitKind::RosenZener ? 4 : 5);
  double identity = 0.0;
  for (int k = 0; k < 1000; ++k) {
    TwoLevelParams p = random_params(rng);
    (kind == LimitKind::RosenZener ? p.E1 : p.E0) = 0.0;
    identity = std::max(identity, std::abs(transition_probability(p) - limit_formula(p, kind).value));
  }
  double oracle = 0.0;
  for (double x : {0.2, 0.7, 1.5})
    for (double v : {0.3, 1.0, 2.0}) {
      const ScaledParams s = kind == LimitKind::RosenZener ? ScaledParams{x, 0.0, v} : ScaledParams{0.0, x, v};
      const TwoLevelParams p = from_scaled(s);
      oracle = std::max(oracle, std::abs(propagate(Model{p}).probability - limit_formula(p, kind).value));
    }
  return {identity <= 4e-16 && oracle < 1e-6,
          "identity max |diff| " + sci(identity) + " (1000 draws), ODE max |diff| " + sci(oracle) + " (9 points)"};
}

Outcome extrema() {
  double worst = 0.0;
  for (double v : {0.2, 0.5, 1.0, 2.0}) {
    const auto ext = extremal_probabilities(from_scaled({0.0, 1.0, v}));
    for (double e0 : {0.0, kPi, 2 * kPi})
      worst = std::max(worst, std::abs(transition_probability(ScaledParams{e0, 1.0, v}) - ext.p_min));
    for (double e0 : {kPi / 2, 3 * kPi / 2})
      worst = std::max(worst, std::abs(transition_probability(ScaledParams{e0, 1.0, v}) - ext.p_max));
  }
  long violations = 0, rows = 0;
  for (const char* preset : {"fig2a", "fig2b"})
    for (const auto& family : run_sweep(sweep_preset(preset), default_worker_count()))
      for (const auto& r : family) {
        ++rows;
        if (!(r.p_min <= r.p_analytic + 1e-15 && r.p_analytic <= r.p_max + 1e-15 && r.p_min <= r.p_max))
          ++violations;
      }
  return {worst < 1e-12 && violations == 0,
          "extremum max |diff| " + sci(worst) + ", envelope violations " + std::to_string(violations) + " of " +
              std::to_string(rows) + " sweep rows"};
}

Outcome landau_zener() {
  bool decided = true;
  std::string detail;
  for (double e1t : {10.0, 20.0, 40.0}) {
    const auto cmp = compare_landau_zener(TwoLevelParams{0.0, e1t, 1.0, 1.0});
    decided = decided && cmp.rel_err_asymptotic < 0.02 && cmp.rel_err_printed > 0.02 && cmp.asymptotic_preferred;
    detail += "E1T=" + std::to_string(static_cast<int>(e1t)) + ": err " + sci(cmp.rel_err_asymptotic) +
              " vs -pi V0^2 T/E1, ratio to printed exponent " + sci(cmp.ratio_printed) + "; ";
  }
  detail += "printed -pi V0^2 T/(2 E1) is off by a factor of about 2 (documented discrepancy)";
  return {decided, detail};
}

Outcome class_invariance() {
  const InvarianceReport rep = class_invariance_check(
      {1 / kPi, 1 / kPi, 1 / kPi}, {ProfileKind::Sinh, ProfileKind::Linear, ProfileKind::LinearCubic});
  return {rep.max_pairwise_diff < 5e-8, "sinh/linear/linear_cubic max pairwise diff " + sci(rep.max_pairwise_diff)};
}

Outcome okubo_reduction() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> cpl(0.2, 1.0), bias(-1.0, 1.0);
  const IntegratorConfig cfg{1e-12, 1e-14};
  double residual = 0.0, lambda_diff = 0.0;
  for (int n : {2, 3, 4}) {
    MultiLevelParams p;
    p.E1 = bias(rng);
    p.T = 1.0;
    for (int j = 1; j < n; ++j) p.couplings.push_back(cpl(rng));
    std::vector<double> la(n - 1, 1.0 / (n - 1)), lb(n - 1, 0.0);
    lb.front() = 1.0;
    const auto traj = schrodinger_trajectory(p, -10.0, 10.0, cfg);
    residual = std::max(residual, okubo_residual(build_okubo(p, la), p, traj));
    const auto li = lambda_independence_check(p, la, lb, cfg);
    lambda_diff = std::max({lambda_diff, li.max_diff, li.max_diff_direct});
  }
  const double E1 = 0.8, V = 0.6;
  const double dk = limit_formula(TwoLevelParams{0.0, E1 / 2, V, 1.0}, LimitKind::DemkovKunike).value;
  const double two = std::abs(okubo_transition_probability({E1, 1.0, {V}}, {1.0}, cfg) - dk);
  return {residual < 1e-6 && lambda_diff < 1e-6 && two < 1e-6,
          "residual " + sci(residual) + ", lambda independence " + sci(lambda_diff) +
              ", N=2 vs Demkov-Kunike (bias E1/2) " + sci(two)};
}

Outcome unitarity_symmetry() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  long out_of_range = 0;
  double asym = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const ScaledParams s{u(rng), u(rng), u(rng)};
    const double p = transition_probability(s);
    if (!(p >= 0.0 && p <= 1.0)) ++out_of_range;
    asym = std::max({asym, std::abs(transition_probability(ScaledParams{-s.eps0, s.eps1, s.v}) - p),
                     std::abs(transition_probability(ScaledParams{s.eps0, -s.eps1, s.v}) - p),
                     std::abs(transition_probability(ScaledParams{s.eps0, s.eps1, -s.v}) - p)});
  }
  return {out_of_range == 0 && asym <= 1e-15,
          "10000 draws, out of [0,1]: " + std::to_string(out_of_range) + ", max sign-flip change " + sci(asym)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"closed form vs ODE oracle", closed_form_vs_oracle},
      {"assembly consistency", assembly_consistency},
      {"monodromy element", monodromy_element},
      {"Rosen-Zener reproduction", [] { return limit_reproduction(LimitKind::RosenZener); }},
      {"Demkov-Kunike reproduction", [] { return limit_reproduction(LimitKind::DemkovKunike); }},
      {"extrema and envelope", extrema},
      {"Landau-Zener limit", landau_zener},
      {"class-1 invariance", class_invariance},
      {"Okubo reduction", okubo_reduction},
      {"unitarity and symmetry", unitarity_symmetry},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s (%s)\n", index, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
