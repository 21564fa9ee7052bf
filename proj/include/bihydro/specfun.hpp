#pragma once

// Real-argument special functions: log-Gamma, Euler Beta, Kummer 1F1 and
// Whittaker M. Everything here is a pure function of its arguments.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bihydro/errors.hpp"

namespace bihydro::specfun {

struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 5000;
};

namespace detail {

// Lanczos approximation, g = 671/128, 14 terms. Good to a few ulp for x > 0.
inline constexpr double kLanczosG = 5.24218750000000000;
inline constexpr double kLanczosC0 = 0.999999999999997092;
inline constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

inline void validate(const SeriesControl& ctl) {
  if (!(ctl.rel_tol > 0.0) || ctl.max_terms < 1) {
    throw Error(ErrorCode::Domain, "SeriesControl requires rel_tol > 0 and max_terms >= 1");
  }
}

}  // namespace detail

inline double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::Domain, "ln_gamma requires a finite x > 0, got " + std::to_string(x));
  }
  double tmp = x + detail::kLanczosG;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = detail::kLanczosC0;
  double y = x;
  for (double c : detail::kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  // sqrt(2*pi)
  return tmp + std::log(2.5066282746310005 * ser / x);
}

inline double beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw Error(ErrorCode::Domain, "beta requires p > 0 and q > 0");
  }
  return std::exp(ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q));
}

/// Born's constant B(1/4,1/4)/4: the integral of (1+r^4)^(-1/2) over [0, inf).
inline double quarter_beta() {
  static const double value = 0.25 * beta(0.25, 0.25);
  return value;
}

/// Kummer's confluent hypergeometric function 1F1(alpha; gamma; z), summed
/// as a power series with the term recurrence
///   t_{n+1} = t_n * (alpha + n) / (gamma + n) * z / (n + 1).
/// Supported for |z| <= 200; no asymptotic continuation is attempted. For
/// z < 0 the series is summed after Kummer's transformation
///   1F1(alpha; gamma; z) = e^z 1F1(gamma - alpha; gamma; -z),
/// which removes the alternating-sign cancellation.
inline double kummer_m(double alpha, double gamma, double z, const SeriesControl& ctl = {}) {
  detail::validate(ctl);
  if (detail::is_nonpositive_integer(gamma)) {
    throw Error(ErrorCode::Domain, "kummer_m: gamma must not be a non-positive integer");
  }
  if (!(std::abs(z) <= 200.0)) {
    throw Error(ErrorCode::Domain, "kummer_m: |z| > 200 is outside the supported range");
  }
  if (z < 0.0) {
    return std::exp(z) * kummer_m(gamma - alpha, gamma, -z, ctl);
  }
  double sum = 1.0;
  double term = 1.0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    const double ratio = (alpha + n) / (gamma + n) * z / (n + 1);
    term *= ratio;
    if (term == 0.0) return sum;  // alpha hit a non-positive integer
    sum += term;
    // Only trust the truncation test once the terms are shrinking.
    if (std::abs(ratio) < 1.0 && std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
      return sum;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "kummer_m: series did not converge within " + std::to_string(ctl.max_terms) + " terms");
}

/// Whittaker M_{a,nu}(z) = exp(-z/2) z^(nu+1/2) 1F1(nu - a + 1/2; 1 + 2nu; z).
inline double whittaker_m(double a, double nu, double z, const SeriesControl& ctl = {}) {
  if (!(z > 0.0)) {
    throw Error(ErrorCode::Domain, "whittaker_m requires z > 0");
  }
  if (detail::is_nonpositive_integer(1.0 + 2.0 * nu)) {
    throw Error(ErrorCode::Domain, "whittaker_m: 1 + 2nu must not be a non-positive integer");
  }
  return std::exp(-0.5 * z) * std::pow(z, nu + 0.5) * kummer_m(nu - a + 0.5, 1.0 + 2.0 * nu, z, ctl);
}

}  // namespace bihydro::specfun
