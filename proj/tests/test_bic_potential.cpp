#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <boost/math/tools/minima.hpp>

#include "bihydro/bic_potential.hpp"

using namespace bihydro;
using namespace bihydro::bic;

namespace {

// Z(rho) from a 40-digit arbitrary-precision quadrature of the same integral.
struct ZCase {
  double rho;
  double z;
};
constexpr ZCase kZ[] = {
    {0.001, 0.0018535746773013719198}, {0.1, 0.18040746909905821811},
    {0.654988, 0.999999945446913401},  {2.139634, 1.7903167774409930973},
    {10.0, 1.1541921785474250051},     {50.0, 1.0262684778552409456},
    {1000.0, 1.0012728254935939784},   {1e4, 1.0001271019685230882},
    {1e6, 1.0000012708216271968},
};

}  // namespace

TEST(ZIntegrand, Values) {
  EXPECT_DOUBLE_EQ(z_integrand(0.0, 0.0), -1.0);
  EXPECT_DOUBLE_EQ(z_integrand(0.0, 123.0), -1.0);
  EXPECT_NEAR(z_integrand(0.2, 0.0), -1.1233758070503088581, 1e-14);
  EXPECT_NEAR(z_integrand(0.1, 3.0), -1.0161567208295815784, 1e-14);
}

TEST(ZIntegrand, InverseSqrtBlowUpAtUpperLimit) {
  // Numerator -> -1/2 and the first radical vanishes linearly, so
  // integrand * sqrt(ymax - y) tends to a finite negative constant.
  double last = 0.0;
  for (double gap : {1e-4, 1e-6, 1e-8}) {
    const double v = z_integrand(kYMax - gap, 0.0) * std::sqrt(gap);
    EXPECT_LT(v, 0.0);
    if (last != 0.0) {
      EXPECT_NEAR(v, last, 1e-3 * std::abs(last));
    }
    last = v;
  }
  EXPECT_THROW(z_integrand(kYMax, 0.0), Error);
  EXPECT_THROW(z_integrand(-0.1, 0.0), Error);
}

TEST(ZOfRho, Landmarks) {
  EXPECT_EQ(z_of_rho(0.0), 0.0);
  EXPECT_NEAR(z_of_rho(0.654988), 1.0, 1e-3);
  EXPECT_NEAR(z_of_rho(1000.0), 1.0, 1e-2);
  EXPECT_NEAR(z_of_rho(50.0), 1.0, 5e-2);
}

TEST(ZOfRho, MatchesExtendedPrecisionOracle) {
  for (const auto& c : kZ) {
    const double tol = c.rho > 1e3 ? 5e-8 : 1e-10;
    EXPECT_NEAR(z_of_rho(c.rho), c.z, tol) << "rho = " << c.rho;
  }
}

TEST(ZOfRho, MaximumLocation) {
  const auto neg = [](double r) { return -z_of_rho(r); };
  const auto [arg, val] = boost::math::tools::brent_find_minima(neg, 0.5, 10.0, 40);
  EXPECT_NEAR(arg, 2.139634, 1e-3);
  EXPECT_NEAR(arg, 2.1396341799581859634, 1e-6);
  const double zmax = -val;
  for (double r = 0.01; r <= 10.0; r += 0.01) EXPECT_LE(z_of_rho(r), zmax + 1e-12);
}

TEST(ZOfRho, DecompositionHasNegativeIntegral) {
  for (double r : {0.01, 0.5, 1.0, 3.0, 7.5, 10.0, 100.0}) {
    const double integral = screening_integral(r).value;
    EXPECT_LT(integral, 0.0);
    EXPECT_NEAR(z_of_rho(r) - specfun::quarter_beta() * r, r * r * integral, 1e-12 * r);
  }
}

TEST(ZOfRho, RangeErrors) {
  EXPECT_THROW(z_of_rho(-1.0), Error);
  try {
    z_of_rho(2e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Range);
  }
}

TEST(WOfRho, OriginLimitAndDefinition) {
  EXPECT_NEAR(w_of_rho(0.0), -1.8540746773013719184, 1e-12);
  EXPECT_NEAR(w_of_rho(1e-6), w_of_rho(0.0), 1e-5);
  EXPECT_NEAR(w_of_rho(0.654988), -1.0 / 0.654988, 2e-3);
  EXPECT_NEAR(w_of_rho(100.0), -0.01, 1e-3);
  for (double r = 0.05; r <= 10.0; r += 0.35) {
    EXPECT_NEAR(w_of_rho(r) + z_of_rho(r) / r, 0.0, 1e-12);
  }
  EXPECT_THROW(w_of_rho(-0.5), Error);
}

TEST(BornPhi, ValuesAndTail) {
  EXPECT_NEAR(born_phi(0.0), 1.8540746773013719184, 1e-12);
  EXPECT_NEAR(born_phi(100.0), 0.01, 1e-6);
  EXPECT_NEAR(born_phi(1000.0) * 1000.0, 1.0, 1e-9);
  EXPECT_GT(born_phi(1.0), born_phi(2.0));
  EXPECT_THROW(born_phi(-1.0), Error);
}

TEST(BornPhi, DerivativeMatchesIntegrand) {
  const double h = 1e-3;
  for (double r : {0.5, 1.0, 2.0}) {
    const double fd = (born_phi(r + h) - born_phi(r - h)) / (2 * h);
    EXPECT_NEAR(fd, -1.0 / std::sqrt(1.0 + r * r * r * r), 1e-6);
  }
}

TEST(Tabulate, ExactTableContract) {
  const auto t = tabulate(PotentialKind::ExactBIC, 0.0, 10.0, 3);
  ASSERT_EQ(t.rho.size(), 3u);
  EXPECT_NEAR(t.values[0], -1.8540747, 1e-7);
  EXPECT_EQ(t.rho[1], 5.0);
  EXPECT_NEAR(t.values[2], -z_of_rho(10.0) / 10.0, 1e-15);

  const auto big = tabulate(PotentialKind::ExactBIC, 0.0, 10.0, 1001);
  ASSERT_EQ(big.values.size(), 1001u);
  for (std::size_t i = 1; i < big.rho.size(); ++i) EXPECT_LT(big.rho[i - 1], big.rho[i]);
  for (double v : big.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(big.rho.back(), 10.0);
}

TEST(Tabulate, MorseTableIsClosedForm) {
  const auto t = tabulate(PotentialKind::MorseSurrogate, 0.0, 10.0, 2, morse::kPublishedParams);
  EXPECT_TRUE(t.z.empty());
  EXPECT_DOUBLE_EQ(t.values[0], morse::morse_w(morse::kPublishedParams, 0.0));
  EXPECT_DOUBLE_EQ(t.values[1], morse::morse_w(morse::kPublishedParams, 10.0));
  try {
    tabulate(PotentialKind::MorseSurrogate, 0.0, 10.0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingParameters);
  }
  EXPECT_THROW(tabulate(PotentialKind::ExactBIC, 1.0, 1.0, 4), Error);
  EXPECT_THROW(tabulate(PotentialKind::ExactBIC, 0.0, 1.0, 1), Error);
}

TEST(SplinePotential, WithinInterpolationBudget) {
  const auto spline = exact_bic_spline(40.0, 2000);
  double worst = 0.0;
  for (double r = 0.0137; r < 40.0; r += 0.3791) {
    worst = std::max(worst, std::abs(spline(r) - w_of_rho(r)));
  }
  EXPECT_LT(worst, 1e-8);
  EXPECT_NEAR(spline(0.0), -specfun::quarter_beta(), 1e-12);
}
