#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <future>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natmono/models.hpp"
#include "natmono/propagator.hpp"

namespace natmono {

enum class SweepAxis { Eps0, Eps1 };

/// Grid over eps0 or eps1 (pi T-scaled units) for each coupling v; one curve
/// family per v value.
struct SweepSpec {
  SweepAxis vary = SweepAxis::Eps0;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
  std::vector<double> v_values{1.0};
  double fixed = 1.0;  // the non-varied of eps0 / eps1
  bool oracle = false;
  PropagationConfig propagation;

  void validate() const;
  double grid_value(int index) const;
};

/// Presets: "fig2a" sweeps eps0 at eps1 = 1, "fig2b" sweeps eps1 at
/// eps0 = 1; both use v in {0.2, 0.5, 1, 2}.
SweepSpec sweep_preset(std::string_view name);

struct ReportRow {
  double varied = 0.0;
  double v = 0.0;
  double fixed = 0.0;
  double p_analytic = 0.0;
  std::optional<double> p_numeric;
  std::optional<double> abs_diff;
  double p_min = 0.0;
  double p_max = 0.0;
};

ScaledParams row_params(const SweepSpec& spec, double varied, double v);
ReportRow evaluate_row(const SweepSpec& spec, double varied, double v);

/// Rows grouped by v (outer) in grid order (inner). Rows are computed on
/// `workers` threads; ordering never depends on completion order.
std::vector<std::vector<ReportRow>> run_sweep(const SweepSpec& spec, int workers);

/// MONODROMY_WORKERS if set and positive, else the hardware concurrency.
int default_worker_count();

/// 17 significant digits, '.' decimal separator.
std::string format_number(double x);

std::string csv_header(const SweepSpec& spec);
std::string csv_row(const SweepSpec& spec, const ReportRow& row);
void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<ReportRow>& rows);

/// Evaluates fn(0..n-1) on a bounded pool and returns results by index.
template <class Fn>
auto parallel_map(int n, int workers, Fn fn) -> std::vector<decltype(fn(0))> {
  using R = decltype(fn(0));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int pool = std::max(1, std::min(workers, n));
  std::vector<std::future<void>> running;
  for (int k = 1; k < pool; ++k) running.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : running) f.get();
  std::vector<R> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace natmono
