#include <doctest.h>

#include <cmath>
#include <random>

#include "natmono/error.hpp"
#include "natmono/monodromy.hpp"

using namespace natmono;

namespace {

struct MonodromyCase {
  TwoLevelParams p;
  Complex S[4];
  Complex a;
};

// mpmath at 40 digits; a agrees with an independent evaluation through the
// connection to the local basis at z = 1 (tools/oracles.py).
const MonodromyCase kCases[] = {
    {{0.3, 0.7, 0.5, 1.2},
     {{-1.0032401375788868, 0.0039577446348531559},
      {1.00226829885372, -0.005132495851666667},
      {0.0022775976567215651, -0.002775362366981691},
      {-1.0022775976567216, 0.002775362366981691}},
     {1.0022756510445867, -0.0027573848783362862}},
    {{-0.4, 0.2, 0.9, 0.8},
     {{-1.0229840185538924, -0.40122844738166613},
      {1.0188482523220632, 0.41001739800319395},
      {0.025926164349651138, 0.39197134235533679},
      {-1.0259261643496511, -0.39197134235533679}},
     {1.148224103006014, 0.32234600865853561}},
    {{1 / kPi, 1 / kPi, 1 / kPi, 1.0},
     {{-1.0336269154693671, 0.13478940556481446},
      {1.0090302460158519, -0.18853410882421215},
      {0.023635508073823188, -0.076534267981057339},
      {-1.0236355080738232, 0.076534267981057339}},
     {1.0273124927639745, -0.069558322801186486}},
};

struct ProbabilityCase {
  double eps0, eps1, v, p;
};

const ProbabilityCase kProbabilities[] = {
    {1.0, 1.0, 1.0, 0.46303123440699936},   {0.2, 0.5, 2.0, 0.020604153376984307},
    {2.0, 0.2, 0.5, 0.67419268195294462},   {0.5, 0.0, 1.0, 0.096530618217256979},
    {0.0, 1.5, 0.3, 0.93664860047296521},   {2.5, -1.2, 0.8, 0.60220211412649104},
    {1.0, 30.0, 2.0, 0.87530269658647708},  {3.0, 5.0, 25.0, 1.5781438104418757e-18},
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("hypergeometric parameters") {
  const TwoLevelParams p{0.3, 0.7, 0.5, 1.2};
  const HypParams h = hyp_params(p);
  const double r = std::hypot(0.7, 0.5);
  CHECK(std::abs(h.alpha - kI * 1.2 * (-0.7 + r)) < 1e-15);
  CHECK(std::abs(h.beta - kI * 1.2 * (-0.7 - r)) < 1e-15);
  CHECK(std::abs(h.gamma - Complex{0.5 + 0.36, -0.84}) < 1e-15);
  const HypParams hp = hyp_params(p, true);
  const HypParams partner = primed_partner(h);
  CHECK(std::abs(hp.alpha - partner.alpha) < 1e-15);
  CHECK(std::abs(hp.beta - partner.beta) < 1e-15);
  CHECK(std::abs(hp.gamma - partner.gamma) < 1e-15);
}

TEST_CASE("connection matrix and monodromy element match reference values") {
  for (const auto& mc : kCases) {
    const HypParams h = hyp_params(mc.p);
    const ComplexMatrix2 S = connection_matrix_S(h);
    CHECK(rel(S(0, 0), mc.S[0]) < 1e-12);
    CHECK(rel(S(0, 1), mc.S[1]) < 1e-12);
    CHECK(rel(S(1, 0), mc.S[2]) < 1e-12);
    CHECK(rel(S(1, 1), mc.S[3]) < 1e-12);
    CHECK(rel(monodromy_element_a(h), mc.a) < 1e-12);
    const MonodromyData md = global_monodromy(h);
    CHECK(rel(md.Rtilde(0, 0), mc.a) < 1e-12);
  }
}

TEST_CASE("global monodromy spectrum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 100; ++k) {
    const TwoLevelParams p{u(rng), u(rng), u(rng), 0.5 + 0.5 * (u(rng) + 1.5)};
    if (std::abs(p.V0) < 1e-3) continue;
    const HypParams h = hyp_params(p);
    const MonodromyData md = global_monodromy(h);
    const Complex lambda = e_of(exponent_at_one(h));
    CHECK(rel(md.Rtilde.trace(), 1.0 + lambda) < 1e-10);
    CHECK(rel(md.Rtilde.determinant(), lambda) < 1e-10);
    CHECK(md.Gamma(0, 1) == Complex{0.0, 0.0});
  }
}

TEST_CASE("numeric monodromy around z = 1") {
  for (const auto& mc : kCases) {
    const HypParams h = hyp_params(mc.p);
    const ComplexMatrix2 ccw = numeric_monodromy(h);
    CHECK(rel(ccw(0, 0), mc.a) < 1e-8);
    NumericMonodromyOptions rev;
    rev.orientation = LoopOrientation::Clockwise;
    const ComplexMatrix2 cw = numeric_monodromy(h, {1e-12, 1e-14}, rev);
    CHECK((ccw * cw - ComplexMatrix2::Identity()).norm() < 1e-8);
    // The reversed path is the same loop traversed backwards.
    const ContourPath loop = default_monodromy_loop();
    const ComplexMatrix2 back = monodromy_along(h, loop.reversed(), loop.start(), {1e-12, 1e-14});
    CHECK((back - cw).norm() < 1e-8);
  }
}

TEST_CASE("numeric monodromy: degenerate loops are rejected") {
  const HypParams h = hyp_params({0.3, 0.7, 0.5, 1.2});
  ContourPath through_one(Complex{0.5, 2.0});
  through_one.line_to(1.0).line_to(Complex{0.5, 2.0});
  CHECK_THROWS_AS(monodromy_along(h, through_one, through_one.start(), {}), Error);
  ContourPath open(Complex{0.5, 2.0});
  open.line_to(2.0);
  CHECK_THROWS_AS(monodromy_along(h, open, open.start(), {}), Error);
  NumericMonodromyOptions big;
  big.loop_radius = 1.2;  // would enclose z = 0
  CHECK_THROWS_AS(default_monodromy_loop(big), Error);
  CHECK_THROWS_AS(fundamental_matrix_at_infinity(h, 0.5), Error);
}

TEST_CASE("initial coefficients reproduce the asymptotic state") {
  for (const TwoLevelParams& p : {TwoLevelParams{0.3, 0.7, 0.5, 1.2}, TwoLevelParams{-0.4, 0.2, -0.9, 0.8}}) {
    const InitialCoefficients ic = initial_coefficients(p);
    const double t = -30.0 * p.T;
    const Complex z = (std::sinh(t / p.T) + kI) / (2.0 * kI);
    const double r = std::hypot(p.E1, p.V0);
    const double phase = p.E0 * p.T * 2.0 * std::atan(std::tanh(t / (2.0 * p.T))) +
                         p.E1 * p.T * std::log(std::cosh(t / p.T));
    const auto [A, Ap] = mixing_amplitudes(p.E1, p.V0);
    const double s = p.V0 < 0 ? -1.0 : 1.0;
    const Complex c1 = A * std::exp(kI * r * t) * std::exp(kI * phase);
    const Complex c2 = -s * Ap * std::exp(kI * r * t) * std::exp(-kI * phase);
    const Complex f1 = fundamental_matrix_at_infinity(hyp_params(p), z)(0, 0);
    const Complex f2 = fundamental_matrix_at_infinity(hyp_params(p, true), z)(0, 0);
    CHECK(std::abs(ic.A1 * f1 - c1) < 1e-9);
    CHECK(std::abs(ic.B1 * f2 - c2) < 1e-9);
    CHECK(ic.A2 == Complex{0.0, 0.0});
    CHECK(ic.B2 == Complex{0.0, 0.0});
  }
}

TEST_CASE("closed-form probability matches reference values") {
  for (const auto& pc : kProbabilities) {
    const double got = transition_probability(ScaledParams{pc.eps0, pc.eps1, pc.v});
    CHECK(std::abs(got - pc.p) <= 1e-14 * std::max(1e-4, pc.p));
  }
}

TEST_CASE("assembly routes agree with the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const TwoLevelParams p{u(rng), u(rng), u(rng), 1.0};
    if (std::abs(p.V0) < 1e-3) continue;
    const double closed = transition_probability(p);
    CHECK(std::abs(transition_probability_assembled(p) - closed) < 1e-10);
    CHECK(std::abs(transition_probability_assembled_unscaled(p) - closed) < 1e-10);
  }
}

TEST_CASE("probability symmetries and bounds") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const ScaledParams s{u(rng), u(rng), u(rng)};
    const double p = transition_probability(s);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(transition_probability(ScaledParams{-s.eps0, s.eps1, s.v}) == p);
    CHECK(transition_probability(ScaledParams{s.eps0, -s.eps1, s.v}) == p);
    CHECK(transition_probability(ScaledParams{s.eps0, s.eps1, -s.v}) == p);
  }
  // V0 = 0: the state follows the diabatic basis, so it always ends up excited.
  CHECK(transition_probability(ScaledParams{0.7, 1.3, 0.0}) == doctest::Approx(1.0));
  // huge arguments stay finite
  const double far = transition_probability(ScaledParams{0.3, 400.0, 300.0});
  CHECK(std::isfinite(far));
  CHECK_THROWS_AS(transition_probability(ScaledParams{1.0, 0.0, 0.0}), Error);
}

TEST_CASE("extremal probabilities") {
  for (double v : {0.2, 0.5, 1.0, 2.0}) {
    const TwoLevelParams base = from_scaled({0.0, 1.0, v});
    const auto ext = extremal_probabilities(base);
    CHECK(ext.p_min <= ext.p_max);
    for (double e0 : {0.0, kPi, 2 * kPi})
      CHECK(std::abs(transition_probability(ScaledParams{e0, 1.0, v}) - ext.p_min) < 1e-12);
    for (double e0 : {kPi / 2, 3 * kPi / 2})
      CHECK(std::abs(transition_probability(ScaledParams{e0, 1.0, v}) - ext.p_max) < 1e-12);
  }
}

TEST_CASE("limit formulas") {
  const TwoLevelParams rz{0.4, 0.0, 0.7, 1.3};
  CHECK(std::abs(transition_probability(rz) - limit_formula(rz, LimitKind::RosenZener).value) < 1e-15);
  const TwoLevelParams dk{0.0, 0.4, 0.7, 1.3};
  CHECK(std::abs(transition_probability(dk) - limit_formula(dk, LimitKind::DemkovKunike).value) < 1e-15);
  CHECK_THROWS_AS(limit_formula(dk, LimitKind::RosenZener), Error);
  CHECK_THROWS_AS(limit_formula(rz, LimitKind::DemkovKunike), Error);
  CHECK_THROWS_AS(limit_formula(TwoLevelParams{0.0, -1.0, 1.0, 1.0}, LimitKind::LandauZener), Error);
  const LimitValue lz = limit_formula(TwoLevelParams{0.0, 20.0, 1.0, 1.0}, LimitKind::LandauZener);
  REQUIRE(lz.alternative.has_value());
  CHECK(lz.value == doctest::Approx(std::exp(-kPi / 40.0)));
  CHECK(*lz.alternative == doctest::Approx(std::exp(-kPi / 20.0)));
}

TEST_CASE("Landau-Zener exponent follows -pi V0^2 T / E1") {
  for (double e1 : {10.0, 20.0, 40.0}) {
    const auto cmp = compare_landau_zener(TwoLevelParams{0.0, e1, 1.0, 1.0});
    CHECK(cmp.asymptotic_preferred);
    CHECK(cmp.rel_err_asymptotic < 0.02);
    CHECK(cmp.ratio_printed == doctest::Approx(2.0).epsilon(0.01));
  }
}
