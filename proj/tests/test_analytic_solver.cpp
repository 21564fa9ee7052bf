#include <cmath>

#include <gtest/gtest.h>

#include "bihydro/analytic_solver.hpp"

using namespace bihydro;
using namespace bihydro::analytic;
using morse::kPublishedParams;

namespace {

constexpr double kNu = 2.89873;

void expect_invariants(const AnalyticSolution& s, const ModelConstants& c = {}) {
  const auto& m = c.morse;
  EXPECT_NEAR(s.a, std::sqrt(2.0 * s.A_abs), 1e-12);
  EXPECT_NEAR(s.E, -0.5 * s.nu * s.nu, 1e-12);
  EXPECT_NEAR(s.X, 2.0 * s.a * std::exp(-m.kappa * std::abs(m.b)), 1e-10);
  EXPECT_NEAR(s.alpha_beta, m.kappa * m.kappa * s.a * s.a / (2.0 * std::abs(m.G)), 1e-12);
  EXPECT_NEAR(s.A_abs, s.alpha_beta * std::abs(m.G) / (m.kappa * m.kappa), 1e-12);
  EXPECT_LT(s.eps_over_alpha2, 0.0);
}

}  // namespace

TEST(QuantizationResidual, Signs) {
  const double r = quantization_residual(4.414424, kNu, kPublishedParams);
  const double step = quantization_residual(4.414424 + 1e-3, kNu, kPublishedParams) - r;
  EXPECT_LT(std::abs(r / step) * 1e-3, 1e-3);
  // No zero of M below the boundary when the 1F1 coefficients are all positive.
  EXPECT_GT(quantization_residual(0.1, 1.0, kPublishedParams), 0.0);
  EXPECT_THROW(quantization_residual(0.0, 1.0, kPublishedParams), Error);
}

TEST(QuantizationResidual, PolynomialCaseVanishesAtItsRoot) {
  // a = nu + 3/2: 1F1(-1; 1+2nu; z) = 1 - z/(1+2nu). Pick b so the boundary is z = 1+2nu.
  const double nu = 1.0;
  const double a = nu + 1.5;
  morse::MorseParams m = kPublishedParams;
  m.b = -std::log(2.0 * a / (1.0 + 2.0 * nu)) / m.kappa;
  EXPECT_NEAR(quantization_residual(a, nu, m), 0.0, 1e-14);
}

TEST(FirstRoot, PolynomialCases) {
  EXPECT_NEAR(first_root(2.5, 1.0), 3.0, 1e-10);
  for (double nu : {0.3, 1.7, 4.2}) EXPECT_NEAR(first_root(nu + 1.5, nu), 1.0 + 2.0 * nu, 1e-10);
  // Quadratic 1 - 2z/3 + z^2/12: roots 2 and 6; a dense scan agrees on 2.
  EXPECT_NEAR(first_root(3.5, 1.0), 2.0, 1e-10);
}

TEST(FirstRoot, PublishedRoot) {
  EXPECT_NEAR(first_root(4.414424, kNu), 6.756270935, 2e-3);
  EXPECT_NEAR(first_root(4.414424, kNu), 6.7562724286027961127, 1e-9);
  try {
    first_root(0.1, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRoot);
  }
}

TEST(SolveA, PublishedValueAndConsistency) {
  const double a = solve_a(kNu, kPublishedParams);
  EXPECT_NEAR(a, 4.414424, 1e-3);
  EXPECT_NEAR(a, 4.4144243600462720859, 1e-9);
  EXPECT_NEAR(first_root(a, kNu) - boundary_z(a, kPublishedParams), 0.0, 1e-8);
}

TEST(SolveA, MatchesScanOracle) {
  // Dense (a, z) scan with step 0.01 x 0.001, refined in 30-digit arithmetic.
  EXPECT_NEAR(solve_a(2.5, kPublishedParams), 3.9696635037266518806, 1e-9);
}

TEST(SolveA, GroundStateIsNodeless) {
  for (double nu : {1.0, 2.5, kNu, 4.0}) {
    const double a = solve_a(nu, kPublishedParams);
    const double x = boundary_z(a, kPublishedParams);
    const double first = specfun::whittaker_m(a, nu, x / 1000.0);
    ASSERT_GT(first, 0.0);
    for (int i = 1; i < 1000; ++i) {
      EXPECT_GT(specfun::whittaker_m(a, nu, x * i / 1000.0), 0.0) << "nu=" << nu << " i=" << i;
    }
  }
}

TEST(SolveA, NoSolution) {
  morse::MorseParams m = kPublishedParams;
  m.kappa = 30.0;  // boundary 2a e^{-13.7}: never reaches the first root for a <= 50
  try {
    solve_a(kNu, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSolution);
  }
}

TEST(Observables, PublishedNumbers) {
  const auto s = observables(kNu, 4.414424);
  EXPECT_NEAR(s.alpha_beta, 1.823373498, 1e-4);
  EXPECT_NEAR(s.eps_over_alpha2, -0.4997331195, 1e-5);
  expect_invariants(s);
}

TEST(Observables, ClosedFormScaling) {
  EXPECT_EQ(observables(kNu, 0.0).alpha_beta, 0.0);
  const double ab1 = observables(kNu, 3.1).alpha_beta;
  EXPECT_NEAR(observables(kNu, 6.2).alpha_beta, 4.0 * ab1, 1e-15 * ab1);
  EXPECT_THROW(observables(-1.0, 1.0), Error);
}

TEST(Observables, DomainMappingEndpoints) {
  // rho = 0 <=> x = kappa|b| <=> z = X, and rho -> inf <=> z -> 0.
  const auto s = solve(kNu);
  const auto& m = kPublishedParams;
  const double x0 = m.kappa * (0.0 - m.b);
  EXPECT_NEAR(x0, m.kappa * std::abs(m.b), 1e-15);
  EXPECT_NEAR(2.0 * s.a * std::exp(-x0), s.X, 1e-12);
  EXPECT_LT(2.0 * s.a * std::exp(-m.kappa * (60.0 - m.b)), 1e-12);
}

TEST(Solve, EnergyIsMonotoneInNu) {
  // Scan oracle (30-digit): -0.69305, -0.57508, -0.48282, -0.41030 at nu = 2, 2.5, 3, 3.5.
  const double expected[] = {-0.69304929518136987, -0.57507980617651919, -0.48282227293451531,
                             -0.41029901078191260};
  const double nus[] = {2.0, 2.5, 3.0, 3.5};
  double previous = -INFINITY;
  for (int i = 0; i < 4; ++i) {
    const auto s = solve(nus[i]);
    EXPECT_NEAR(s.eps_over_alpha2, expected[i], 1e-9);
    EXPECT_GT(s.eps_over_alpha2, previous);
    previous = s.eps_over_alpha2;
    expect_invariants(s);
  }
}

TEST(CalibrateNu, EmpiricalTarget) {
  const auto s = calibrate_nu(kEmpiricalEpsOverAlpha2);
  EXPECT_NEAR(s.nu, kNu, 1e-3);
  EXPECT_NEAR(s.alpha_beta, 1.8234, 1e-3);
  EXPECT_NEAR(s.eps_over_alpha2, kEmpiricalEpsOverAlpha2, 1e-7);
  expect_invariants(s);
}

TEST(CalibrateNu, RoundTrip) {
  const double target = solve(kNu).eps_over_alpha2;
  EXPECT_NEAR(calibrate_nu(target).nu, kNu, 1e-8);
}

TEST(CalibrateNu, WidensBracketAndFailsOutsideRange) {
  EXPECT_NEAR(calibrate_nu(solve(5.0).eps_over_alpha2).nu, 5.0, 1e-8);
  try {
    calibrate_nu(-5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Bracketing);
  }
}
