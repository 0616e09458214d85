#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace natmono {

using Complex = std::complex<double>;
using ComplexMatrix2 = Eigen::Matrix2cd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// e(x) = exp(2 pi i x), evaluated directly on complex x (no branch cut).
inline Complex e_of(Complex x) { return std::exp(2.0 * kPi * kI * x); }

bool is_finite(Complex z) noexcept;
bool is_finite(const ComplexMatrix& m) noexcept;

/// Eigenvalues of a 2x2 complex matrix, ordered by the sign of the discriminant root.
std::pair<Complex, Complex> eigenvalues(const ComplexMatrix2& m);

struct SeriesConfig {
  double tol = 1e-16;       // |term| < tol * |partial sum| ...
  int consecutive = 3;      // ... for this many terms in a row
  int max_terms = 100000;
};

/// Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1.
///
/// Throws PoleInC when c is a non-positive integer and NonConvergence when the
/// term cap is reached first. Terminating series (a or b a non-positive integer)
/// stop exactly.
Complex eval_2f1(Complex a, Complex b, Complex c, Complex x, const SeriesConfig& cfg = {});

}  // namespace natmono
