#pragma once

// Closed-form ground state of the Morse surrogate.
//
// With x = kappa (rho - b) the radial equation becomes
//   -u''/2 - |A| (2 e^{-x} - e^{-2x}) u = E u,
// whose solution decaying at x -> inf is u = C M_{a,nu}(2a e^{-x}) with
// a = sqrt(2|A|) and nu = sqrt(2|E|). The hard wall at rho = 0 (x = kappa|b|)
// requires X = 2a e^{-kappa|b|} to be the first positive zero of M, so the
// ground state has no interior node. Fixing nu selects a, and with it alpha*beta
// and the energy.

#include <cmath>
#include <optional>
#include <string>

#include "bihydro/bic_potential.hpp"
#include "bihydro/errors.hpp"
#include "bihydro/morse_model.hpp"
#include "bihydro/roots.hpp"
#include "bihydro/specfun.hpp"

namespace bihydro::analytic {

struct ModelConstants {
  morse::MorseParams morse = morse::kPublishedParams;
  double quarter_beta = specfun::quarter_beta();
  double alpha = bic::kFineStructure;
};

struct AnalyticSolution {
  double nu = 0.0;
  double a = 0.0;
  double X = 0.0;          // first Whittaker root, 2a e^{-kappa|b|}
  double A_abs = 0.0;      // |A| = alpha*beta |G| / kappa^2
  double E = 0.0;          // -nu^2 / 2
  double alpha_beta = 0.0;
  double eps_over_alpha2 = 0.0;
};

/// Empirical hydrogen ground state, epsilon / alpha^2.
inline constexpr double kEmpiricalEpsOverAlpha2 = -0.49973;

inline double boundary_z(double a, const morse::MorseParams& m) {
  return 2.0 * a * std::exp(-m.kappa * std::abs(m.b));
}

/// M_{a,nu}(2a e^{-kappa|b|}); zero when the hard-wall condition holds.
inline double quantization_residual(double a, double nu, const morse::MorseParams& m) {
  if (!(a > 0.0) || !(nu > 0.0)) throw Error(ErrorCode::Domain, "quantization_residual requires a, nu > 0");
  return specfun::whittaker_m(a, nu, boundary_z(a, m));
}

namespace detail {

// Sign of M_{a,nu}(z) is the sign of its 1F1 factor; scanning the factor
// avoids the exp/pow prefactor under- and overflow.
inline double kummer_factor(double a, double nu, double z) {
  return specfun::kummer_m(nu - a + 0.5, 1.0 + 2.0 * nu, z);
}

inline std::optional<double> first_root_below(double a, double nu, double z_limit, double dz = 0.05) {
  const auto f = [a, nu](double z) { return kummer_factor(a, nu, z); };
  double z_prev = 0.0;
  double f_prev = 1.0;  // 1F1(.;.;0) = 1
  while (z_prev < z_limit) {
    const double z = std::min(z_prev + dz, z_limit);
    const double fz = f(z);
    if (fz == 0.0) return z;
    if (std::signbit(fz) != std::signbit(f_prev)) {
      return roots::solve_bracketed(f, z_prev, z, f_prev, fz, 1e-13);
    }
    z_prev = z;
    f_prev = fz;
  }
  return std::nullopt;
}

}  // namespace detail

/// Smallest z > 0 with M_{a,nu}(z) = 0, from a scan with step 0.05 on (0, 200]
/// and bracketed refinement.
inline double first_root(double a, double nu) {
  if (!(a > 0.0) || !(nu > 0.0)) throw Error(ErrorCode::Domain, "first_root requires a, nu > 0");
  const auto root = detail::first_root_below(a, nu, 200.0);
  if (!root) {
    throw Error(ErrorCode::NoRoot, "first_root: M_{a,nu} has no sign change on (0, 200]");
  }
  return *root;
}

/// Smallest a in (0, 50] whose boundary point 2a e^{-kappa|b|} is the first
/// zero of M_{a,nu}.
inline double solve_a(double nu, const morse::MorseParams& m) {
  if (!(nu > 0.0)) throw Error(ErrorCode::Domain, "solve_a requires nu > 0");
  const auto has_root = [&](double a) {
    return detail::first_root_below(a, nu, boundary_z(a, m)).has_value();
  };
  const auto residual = [&](double a) { return detail::kummer_factor(a, nu, boundary_z(a, m)); };

  constexpr double kStep = 0.1;
  constexpr double kMaxA = 50.0;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int k = 1; k * kStep <= kMaxA + 1e-12; ++k) {
    const double a = k * kStep;
    if (has_root(a)) {
      lo = (k - 1) * kStep;
      hi = a;
      found = true;
      break;
    }
    lo = a;
  }
  if (!found) {
    throw Error(ErrorCode::NoSolution, "solve_a: no ground-state a in (0, 50] for nu = " + std::to_string(nu));
  }
  // Below lo the factor is still positive at the boundary. Shrink the bracket
  // until exactly one zero has entered, i.e. the boundary value changed sign.
  if (lo == 0.0) lo = 1e-6;
  double r_hi = residual(hi);
  for (int i = 0; i < 80 && r_hi > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (has_root(mid)) {
      hi = mid;
      r_hi = residual(hi);
    } else {
      lo = mid;
    }
  }
  return roots::solve_bracketed(residual, lo, hi, residual(lo), r_hi, 1e-13);
}

/// alpha*beta and epsilon/alpha^2 for a given (nu, a). The energy follows from
/// E = [lambda + alpha*beta (V0 + B/4 - |G|)] / kappa^2 with E = -nu^2/2 and
/// lambda = (epsilon/alpha^2)(alpha*beta)^2.
inline AnalyticSolution observables(double nu, double a, const ModelConstants& c = {}) {
  if (!(nu > 0.0) || !(a >= 0.0)) throw Error(ErrorCode::Domain, "observables requires nu > 0, a >= 0");
  const auto& m = c.morse;
  const double g_abs = std::abs(m.G);
  const double k2 = m.kappa * m.kappa;
  AnalyticSolution s;
  s.nu = nu;
  s.a = a;
  s.X = boundary_z(a, m);
  s.A_abs = 0.5 * a * a;
  s.E = -0.5 * nu * nu;
  s.alpha_beta = k2 * a * a / (2.0 * g_abs);
  const double shift = m.V0 + c.quarter_beta - g_abs;
  s.eps_over_alpha2 = -(0.5 * k2 * nu * nu + s.alpha_beta * shift) / (s.alpha_beta * s.alpha_beta);
  return s;
}

inline AnalyticSolution solve(double nu, const ModelConstants& c = {}) {
  return observables(nu, solve_a(nu, c.morse), c);
}

/// Finds nu whose solution has epsilon/alpha^2 = target_eps. Starts from the
/// bracket (lo, hi) and widens it within (0.5, 10].
inline AnalyticSolution calibrate_nu(double target_eps = kEmpiricalEpsOverAlpha2,
                                     const ModelConstants& c = {}, double lo = 2.0, double hi = 4.0) {
  const auto f = [&](double nu) { return solve(nu, c).eps_over_alpha2 - target_eps; };
  double f_lo = f(lo);
  double f_hi = f(hi);
  while (std::signbit(f_lo) == std::signbit(f_hi) && f_lo != 0.0 && f_hi != 0.0) {
    if (lo <= 0.5 && hi >= 10.0) {
      throw Error(ErrorCode::Bracketing,
                  "calibrate_nu: target " + std::to_string(target_eps) + " not attainable for nu in (0.5, 10]");
    }
    if (lo > 0.5) {
      lo = std::max(0.5, lo - 0.5);
      f_lo = f(lo);
    }
    if (hi < 10.0) {
      hi = std::min(10.0, hi + 1.0);
      f_hi = f(hi);
    }
  }
  const double nu = roots::solve_bracketed(f, lo, hi, f_lo, f_hi, 1e-12);
  auto s = solve(nu, c);
  if (!(std::abs(s.eps_over_alpha2 - target_eps) <= 1e-7)) {
    throw Error(ErrorCode::NonConvergence, "calibrate_nu: residual above 1e-7 after refinement");
  }
  return s;
}

}  // namespace bihydro::analytic
