#include "natmono/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "natmono/error.hpp"
#include "natmono/monodromy.hpp"

namespace natmono {

void SweepSpec::validate() const {
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs steps >= 2");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "sweep needs lo < hi");
  if (v_values.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one v value");
  for (double v : v_values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "v must be finite");
    if (vary == SweepAxis::Eps1 && v == 0.0 && lo <= 0.0 && hi >= 0.0)
      throw Error(ErrorCode::DegenerateAsymptote, "grid crosses eps1 = v = 0");
    if (vary == SweepAxis::Eps0 && v == 0.0 && fixed == 0.0)
      throw Error(ErrorCode::DegenerateAsymptote, "eps1 = v = 0");
  }
  if (oracle) propagation.validate();
}

double SweepSpec::grid_value(int index) const {
  if (index == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(steps - 1);
}

SweepSpec sweep_preset(std::string_view name) {
  SweepSpec spec;
  spec.v_values = {0.2, 0.5, 1.0, 2.0};
  spec.steps = 201;
  if (name == "fig2a") {
    spec.vary = SweepAxis::Eps0;
    spec.lo = 0.0;
    spec.hi = 2.0 * kPi;
    spec.fixed = 1.0;
  } else if (name == "fig2b") {
    spec.vary = SweepAxis::Eps1;
    spec.lo = 0.0;
    spec.hi = 4.0;
    spec.fixed = 1.0;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

ScaledParams row_params(const SweepSpec& spec, double varied, double v) {
  return spec.vary == SweepAxis::Eps0 ? ScaledParams{varied, spec.fixed, v}
                                      : ScaledParams{spec.fixed, varied, v};
}

ReportRow evaluate_row(const SweepSpec& spec, double varied, double v) {
  const ScaledParams s = row_params(spec, varied, v);
  const TwoLevelParams p = from_scaled(s);
  ReportRow row;
  row.varied = varied;
  row.v = v;
  row.fixed = spec.fixed;
  row.p_analytic = transition_probability(p);
  const auto ext = extremal_probabilities(p);
  row.p_min = ext.p_min;
  row.p_max = ext.p_max;
  if (spec.oracle) {
    row.p_numeric = propagate(Model{p}, spec.propagation).probability;
    row.abs_diff = std::abs(row.p_analytic - *row.p_numeric);
  }
  return row;
}

std::vector<std::vector<ReportRow>> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  const int per_family = spec.steps;
  const int n = per_family * static_cast<int>(spec.v_values.size());
  const auto flat = parallel_map(n, workers, [&spec, per_family](int i) {
    return evaluate_row(spec, spec.grid_value(i % per_family), spec.v_values[i / per_family]);
  });
  std::vector<std::vector<ReportRow>> families(spec.v_values.size());
  for (int i = 0; i < n; ++i) families[i / per_family].push_back(flat[i]);
  return families;
}

int default_worker_count() {
  if (const char* env = std::getenv("MONODROMY_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Guard against a locale with a ',' decimal separator.
  for (char* c = buf; *c; ++c)
    if (*c == ',') *c = '.';
  return buf;
}

std::string csv_header(const SweepSpec& spec) {
  std::string h = spec.vary == SweepAxis::Eps0 ? "eps0" : "eps1";
  h += ",v,eps_fixed,P_analytic";
  if (spec.oracle) h += ",P_numeric,diff";
  h += ",Pmin,Pmax";
  return h;
}

std::string csv_row(const SweepSpec& spec, const ReportRow& row) {
  std::string line = format_number(row.varied) + "," + format_number(row.v) + "," +
                     format_number(row.fixed) + "," + format_number(row.p_analytic);
  if (spec.oracle)
    line += "," + format_number(row.p_numeric.value_or(NAN)) + "," +
            format_number(row.abs_diff.value_or(NAN));
  line += "," + format_number(row.p_min) + "," + format_number(row.p_max);
  return line;
}

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<ReportRow>& rows) {
  os << csv_header(spec) << '\n';
  for (const auto& r : rows) os << csv_row(spec, r) << '\n';
}

}  // namespace natmono
