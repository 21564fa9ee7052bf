#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "bihydro/errors.hpp"

namespace bihydro::roots {

/// Root of f on [lo, hi] given the endpoint values, refined until the
/// bracket is narrower than abs_tol. Throws NoRoot when the signs agree.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double f_lo, double f_hi, double abs_tol,
                       int max_iter = 200) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorCode::NoRoot, "solve_bracketed: endpoints do not bracket a sign change");
  }
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto tol = [abs_tol](double a, double b) { return std::abs(b - a) <= abs_tol; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iters);
  return 0.5 * (a + b);
}

}  // namespace bihydro::roots
