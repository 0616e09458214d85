// natmono: transition probabilities of the sech/tanh two-level model.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "natmono/error.hpp"
#include "natmono/monodromy.hpp"
#include "natmono/okubo.hpp"
#include "natmono/propagator.hpp"
#include "natmono/sweep.hpp"
#include "natmono/verify.hpp"

using namespace natmono;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kToleranceBreach = 2;

// Scaled flags by default; raw flags take over once any of them is given.
struct ParamFlags {
  double eps0 = 1.0, eps1 = 1.0, v = 1.0;
  std::optional<double> E0, E1, V0, T;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--eps0", eps0, "pi T E0")->capture_default_str();
    cmd->add_option("--eps1", eps1, "pi T E1")->capture_default_str();
    cmd->add_option("--v", v, "pi T V0")->capture_default_str();
    cmd->add_option("--E0", E0, "raw E0 (needs --T)");
    cmd->add_option("--E1", E1, "raw E1 (needs --T)");
    cmd->add_option("--V0", V0, "raw V0 (needs --T)");
    cmd->add_option("--T", T, "time scale for raw flags");
  }

  TwoLevelParams resolve() const {
    const bool raw = E0 || E1 || V0;
    if (!raw) {
      TwoLevelParams p = from_scaled({eps0, eps1, v}, T.value_or(1.0));
      p.validate();
      return p;
    }
    if (!T) throw Error(ErrorCode::InvalidArgument, "raw parameters need --T");
    TwoLevelParams p{E0.value_or(0.0), E1.value_or(0.0), V0.value_or(0.0), *T};
    p.validate();
    return p;
  }
};

std::string fmt(double x) { return format_number(x); }

std::string fmt(Complex z) {
  std::string im = fmt(std::abs(z.imag()));
  return fmt(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + im + "i";
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json mjson(const ComplexMatrix2& m) {
  return json::array({json::array({cjson(m(0, 0)), cjson(m(0, 1))}),
                      json::array({cjson(m(1, 0)), cjson(m(1, 1))})});
}

void print_matrix(std::ostream& os, const std::string& name, const ComplexMatrix2& m) {
  os << name << ":\n";
  for (int i = 0; i < 2; ++i) os << "  [" << fmt(m(i, 0)) << ", " << fmt(m(i, 1)) << "]\n";
}

int cmd_prob(const ParamFlags& flags, bool oracle, double tol, bool as_json) {
  const TwoLevelParams p = flags.resolve();
  const ScaledParams s = to_scaled(p);
  const double pa = transition_probability(p);
  const ExtremalProbabilities ext = extremal_probabilities(p);
  std::optional<PropagationResult> num;
  if (oracle) num = propagate(Model{p});
  const double diff = num ? std::abs(pa - num->probability) : 0.0;

  if (as_json) {
    json j{{"eps0", s.eps0}, {"eps1", s.eps1}, {"v", s.v}, {"P_analytic", pa},
           {"Pmin", ext.p_min}, {"Pmax", ext.p_max}};
    if (num) {
      j["P_numeric"] = num->probability;
      j["diff"] = diff;
      j["tolerance"] = tol;
      j["norm_drift"] = num->norm_drift;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "eps0 " << fmt(s.eps0) << "  eps1 " << fmt(s.eps1) << "  v " << fmt(s.v) << "\n";
    std::cout << "P_analytic " << fmt(pa) << "\n";
    std::cout << "Pmin " << fmt(ext.p_min) << "  Pmax " << fmt(ext.p_max) << "\n";
    if (num) {
      std::cout << "P_numeric " << fmt(num->probability) << "\n";
      std::cout << "diff " << fmt(diff) << " (tol " << tol << ")\n";
    }
  }
  if (num && !(diff <= tol)) {
    std::cerr << "diff " << fmt(diff) << " exceeds tolerance " << fmt(tol) << "\n";
    return kToleranceBreach;
  }
  return kOk;
}

struct SweepFlags {
  std::string preset;
  std::string vary = "eps0";
  std::optional<double> lo, hi, fixed;
  std::optional<int> steps;
  std::vector<double> v_values;
  bool oracle = false;
  double tol = 1e-6;
  std::string out_dir;
  int workers = 0;
};

SweepSpec build_sweep(const SweepFlags& f, bool vary_given) {
  SweepSpec spec = f.preset.empty() ? SweepSpec{} : sweep_preset(f.preset);
  if (f.preset.empty() || vary_given) {
    if (f.vary == "eps0" || f.vary == "E0")
      spec.vary = SweepAxis::Eps0;
    else if (f.vary == "eps1" || f.vary == "E1")
      spec.vary = SweepAxis::Eps1;
    else
      throw Error(ErrorCode::InvalidArgument, "--vary must be eps0 or eps1");
  }
  if (f.preset.empty()) {
    spec.lo = 0.0;
    spec.hi = spec.vary == SweepAxis::Eps0 ? 2.0 * kPi : 4.0;
    spec.steps = 101;
  }
  if (f.lo) spec.lo = *f.lo;
  if (f.hi) spec.hi = *f.hi;
  if (f.steps) spec.steps = *f.steps;
  if (f.fixed) spec.fixed = *f.fixed;
  if (!f.v_values.empty()) spec.v_values = f.v_values;
  spec.oracle = f.oracle;
  spec.validate();
  return spec;
}

std::string family_file_name(const SweepSpec& spec, double v) {
  std::ostringstream os;
  os << (spec.vary == SweepAxis::Eps0 ? "eps0" : "eps1") << "_sweep_v" << v << ".csv";
  return os.str();
}

int cmd_sweep(const SweepFlags& f, bool vary_given) {
  const SweepSpec spec = build_sweep(f, vary_given);
  const int workers = f.workers > 0 ? f.workers : default_worker_count();
  const auto families = run_sweep(spec, workers);

  double max_diff = 0.0;
  for (const auto& rows : families)
    for (const auto& r : rows)
      if (r.abs_diff) max_diff = std::max(max_diff, *r.abs_diff);

  if (f.out_dir.empty()) {
    std::cout << csv_header(spec) << "\n";
    for (const auto& rows : families)
      for (const auto& r : rows) std::cout << csv_row(spec, r) << "\n";
  } else {
    std::filesystem::create_directories(f.out_dir);
    for (std::size_t k = 0; k < families.size(); ++k) {
      const auto path = std::filesystem::path(f.out_dir) / family_file_name(spec, spec.v_values[k]);
      std::ofstream out(path);
      if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
      write_csv(out, spec, families[k]);
      std::cerr << "wrote " << path.string() << "\n";
    }
  }
  if (spec.oracle && !(max_diff <= f.tol)) {
    std::cerr << "max diff " << fmt(max_diff) << " exceeds tolerance " << fmt(f.tol) << "\n";
    return kToleranceBreach;
  }
  return kOk;
}

int cmd_monodromy(const ParamFlags& flags, double tol, bool as_json) {
  const TwoLevelParams p = flags.resolve();
  const HypParams h = hyp_params(p);
  const MonodromyData md = global_monodromy(h);
  const ComplexMatrix2 num = numeric_monodromy(h);
  const double diff = std::abs(num(0, 0) - md.a);

  if (as_json) {
    json j{{"alpha", cjson(h.alpha)}, {"beta", cjson(h.beta)}, {"gamma", cjson(h.gamma)},
           {"S", mjson(md.S)}, {"Gamma", mjson(md.Gamma)}, {"Rtilde", mjson(md.Rtilde)},
           {"a", cjson(md.a)}, {"a_prime", cjson(md.a_prime)}, {"R_numeric", mjson(num)},
           {"diff", diff}, {"tolerance", tol}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "alpha " << fmt(h.alpha) << "\nbeta  " << fmt(h.beta) << "\ngamma " << fmt(h.gamma) << "\n";
    print_matrix(std::cout, "S", md.S);
    print_matrix(std::cout, "Gamma", md.Gamma);
    print_matrix(std::cout, "Rtilde", md.Rtilde);
    std::cout << "a  " << fmt(md.a) << "\na' " << fmt(md.a_prime) << "\n";
    print_matrix(std::cout, "R (numeric loop)", num);
    std::cout << "|R11 - a| " << fmt(diff) << " (tol " << tol << ")\n";
  }
  return diff <= tol ? kOk : kToleranceBreach;
}

struct OkuboFlags {
  double E1 = 0.5;
  double T = 1.0;
  std::vector<double> couplings{0.5, 0.3};
  std::vector<double> lambda;
  double window = 10.0;
  double tol = 1e-6;
  bool printed = false;
  bool as_json = false;
};

int cmd_okubo(const OkuboFlags& f) {
  const MultiLevelParams p{f.E1, f.T, f.couplings};
  p.validate();
  const int m = static_cast<int>(p.couplings.size());
  std::vector<double> la = f.lambda.empty() ? std::vector<double>(m, 1.0 / m) : f.lambda;
  std::vector<double> lb(m, 0.0);
  lb.back() = 1.0;
  const auto form = f.printed ? OkuboCoefficients::AsPrinted : OkuboCoefficients::Exact;
  const IntegratorConfig cfg{1e-12, 1e-14};

  const OkuboSystem sys = build_okubo(p, la, form);
  const auto traj = schrodinger_trajectory(p, -f.window * p.T, f.window * p.T, cfg);
  const double residual = okubo_residual(sys, p, traj);
  const auto li = lambda_independence_check(p, la, lb, cfg, f.window, form);
  // The probability map back to amplitudes assumes the exact coefficients.
  const double prob = f.printed ? std::nan("") : okubo_transition_probability(p, la, cfg);
  const double worst = std::max({residual, li.max_diff, li.max_diff_direct});

  if (f.as_json) {
    json j{{"levels", p.levels()}, {"residual", residual}, {"lambda_diff", li.max_diff},
           {"direct_diff", li.max_diff_direct}, {"probability", f.printed ? json(nullptr) : json(prob)}, {"tolerance", f.tol},
           {"coefficients", f.printed ? "printed" : "exact"}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "levels " << p.levels() << (f.printed ? " (printed coefficients)" : "") << "\n";
    std::cout << "residual " << fmt(residual) << "\n";
    std::cout << "lambda independence " << fmt(li.max_diff) << "\n";
    std::cout << "okubo vs schrodinger " << fmt(li.max_diff_direct) << "\n";
    if (!f.printed) std::cout << "P " << fmt(prob) << "\n";
  }
  return worst <= f.tol ? kOk : kToleranceBreach;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed) {
  const auto& names = suites.empty() ? suite_names() : suites;
  std::vector<SuiteReport> reports;
  for (const auto& n : names) reports.push_back(run_suite(n, seed));
  const SuiteReport report = reports.size() == 1 ? reports.front() : merge_reports(reports);
  std::cout << to_json(report).dump(2) << "\n";
  return report.passed() ? kOk : kToleranceBreach;
}

}  // namespace

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description) {
  auto* cmd = app.add_subcommand(name, description);
  cmd->allow_config_extras(CLI::config_extras_mode::error);
  return cmd;
}

// Flat key=value files: unsectioned keys belong to the selected subcommand.
class FlatConfig : public CLI::ConfigBase {
 public:
  explicit FlatConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigBase::from_config(input);
    const auto selected = app_->get_subcommands();
    if (selected.empty()) return items;
    for (auto& item : items)
      if (item.parents.empty() && item.name != "config") item.parents = {selected.front()->get_name()};
    return items;
  }

 private:
  const CLI::App* app_;
};

int main(int argc, char** argv) {
  CLI::App app{"Nonadiabatic transition probabilities from monodromy"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key=value file; flags take precedence");
  app.config_formatter(std::make_shared<FlatConfig>(&app));

  ParamFlags prob_params;
  bool prob_oracle = false, prob_json = false;
  double prob_tol = 1e-6;
  auto* prob = add_command(app, "prob", "closed-form probability, optionally checked by propagation");
  prob_params.add_to(prob);
  prob->add_flag("--oracle", prob_oracle, "also propagate the Schrodinger equation");
  prob->add_option("--tol", prob_tol, "allowed |P_analytic - P_numeric|")->capture_default_str();
  prob->add_flag("--json", prob_json);

  SweepFlags sweep_flags;
  auto* sweep = add_command(app, "sweep", "CSV sweep over eps0 or eps1");
  sweep->add_option("--preset", sweep_flags.preset)->check(CLI::IsMember({"fig2a", "fig2b"}));
  auto* vary_opt = sweep->add_option("--vary", sweep_flags.vary, "eps0 or eps1")->capture_default_str();
  sweep->add_option("--lo", sweep_flags.lo);
  sweep->add_option("--hi", sweep_flags.hi);
  sweep->add_option("--steps", sweep_flags.steps);
  sweep->add_option("--v", sweep_flags.v_values, "coupling values, one curve each")->delimiter(',');
  sweep->add_option("--fixed", sweep_flags.fixed, "value of the other scaled energy");
  sweep->add_flag("--oracle", sweep_flags.oracle);
  sweep->add_option("--tol", sweep_flags.tol)->capture_default_str();
  sweep->add_option("--out-dir", sweep_flags.out_dir, "one CSV per v; stdout if omitted");
  sweep->add_option("--workers", sweep_flags.workers, "0 uses MONODROMY_WORKERS or all cores");

  ParamFlags mono_params;
  double mono_tol = 1e-6;
  bool mono_json = false;
  auto* mono = add_command(app, "monodromy", "S, Gamma, Rtilde, a and a numeric loop");
  mono_params.add_to(mono);
  mono->add_option("--tol", mono_tol)->capture_default_str();
  mono->add_flag("--json", mono_json);

  OkuboFlags okubo_flags;
  auto* okubo = add_command(app, "okubo", "Okubo residual and weight independence for N levels");
  okubo->add_option("--E1", okubo_flags.E1)->capture_default_str();
  okubo->add_option("--T", okubo_flags.T)->capture_default_str();
  okubo->add_option("--couplings", okubo_flags.couplings, "V_2 ... V_N")->delimiter(',');
  okubo->add_option("--lambda", okubo_flags.lambda, "weights summing to 1")->delimiter(',');
  okubo->add_option("--window", okubo_flags.window, "trajectory on [-w T, w T]")->capture_default_str();
  okubo->add_option("--tol", okubo_flags.tol)->capture_default_str();
  okubo->add_flag("--printed", okubo_flags.printed, "use the printed diagonal coefficients");
  okubo->add_flag("--json", okubo_flags.as_json);

  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  auto* verify = add_command(app, "verify", "run the verification suites, JSON report");
  verify->add_option("--suite", suites)->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*prob) return cmd_prob(prob_params, prob_oracle, prob_tol, prob_json);
    if (*sweep) return cmd_sweep(sweep_flags, vary_opt->count() > 0);
    if (*mono) return cmd_monodromy(mono_params, mono_tol, mono_json);
    if (*okubo) return cmd_okubo(okubo_flags);
    if (*verify) return cmd_verify(suites, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
