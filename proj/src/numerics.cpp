#include "natmono/numerics.hpp"

#include <cmath>

#include "natmono/error.hpp"

namespace natmono {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PoleInC: return "PoleInC";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::DegenerateAsymptote: return "DegenerateAsymptote";
    case ErrorCode::SingularConnection: return "SingularConnection";
    case ErrorCode::BasisIllConditioned: return "BasisIllConditioned";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NormDriftExceeded: return "NormDriftExceeded";
    case ErrorCode::WeightSumViolation: return "WeightSumViolation";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_finite(const ComplexMatrix& m) noexcept {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_finite(m(i, j))) return false;
  return true;
}

std::pair<Complex, Complex> eigenvalues(const ComplexMatrix2& m) {
  const Complex half_trace = 0.5 * (m(0, 0) + m(1, 1));
  const Complex det = m.determinant();
  const Complex root = std::sqrt(half_trace * half_trace - det);
  // Pick the larger-modulus root first and recover the other from the
  // determinant to avoid cancellation.
  Complex l1 = std::abs(half_trace + root) >= std::abs(half_trace - root) ? half_trace + root
                                                                          : half_trace - root;
  Complex l2 = l1 != Complex{} ? det / l1 : Complex{};
  return {l1, l2};
}

namespace {

bool is_nonpositive_integer(Complex c) {
  const double r = std::round(c.real());
  const double scale = std::max(1.0, std::abs(c));
  return r <= 0.0 && std::abs(c - Complex{r, 0.0}) < 1e-14 * scale;
}

}  // namespace

Complex eval_2f1(Complex a, Complex b, Complex c, Complex x, const SeriesConfig& cfg) {
  if (is_nonpositive_integer(c)) throw Error(ErrorCode::PoleInC, "c is a non-positive integer");
  if (std::abs(x) >= 1.0) throw Error(ErrorCode::PreconditionViolated, "|x| >= 1 outside series region");
  if (x == Complex{}) return 1.0;

  Complex sum = 1.0;
  Complex term = 1.0;
  int small_run = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double dn = n;
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
    sum += term;
    if (term == Complex{}) return sum;  // terminating series
    if (std::abs(term) < cfg.tol * std::abs(sum)) {
      if (++small_run >= cfg.consecutive) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NonConvergence, "2F1 series hit the term cap");
}

}  // namespace natmono
