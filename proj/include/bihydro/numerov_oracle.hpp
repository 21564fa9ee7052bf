#pragma once

// Direct s-state solve of
//   -u''/2 + alpha*beta W(rho) u = lambda u,   lambda = (epsilon/alpha^2)(alpha*beta)^2,
// by Numerov shooting from the origin and bisection on lambda. This path never
// touches Whittaker functions and serves as an independent check of the
// analytic solver.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bihydro/errors.hpp"

namespace bihydro::numerov {

struct RadialProblem {
  std::function<double(double)> potential;  // W(rho)
  double alpha_beta = 1.0;
  double rho_max = 40.0;
  double h = 1e-3;
  double lambda_tol = 1e-10;
};

struct ShootResult {
  double endpoint = 0.0;
  int node_count = 0;
};

struct OracleResult {
  double lambda = 0.0;
  double eps_over_alpha2 = 0.0;
  int node_count = 0;
  int iterations = 0;
  int grid_points = 0;
};

namespace detail {

inline void validate(const RadialProblem& p) {
  if (!p.potential) throw Error(ErrorCode::Domain, "RadialProblem: potential not set");
  if (!(p.alpha_beta > 0.0)) throw Error(ErrorCode::Domain, "RadialProblem: alpha_beta must be positive");
  if (!(p.rho_max >= 20.0)) throw Error(ErrorCode::Domain, "RadialProblem: rho_max must be >= 20");
  if (!(p.h > 0.0 && p.h <= 1e-2)) throw Error(ErrorCode::Domain, "RadialProblem: h must lie in (0, 1e-2]");
  if (!(p.lambda_tol > 0.0)) throw Error(ErrorCode::Domain, "RadialProblem: lambda_tol must be positive");
}

/// alpha*beta W sampled on the shooting grid. Only the origin may be singular.
struct Grid {
  double h = 0.0;
  std::vector<double> v;

  explicit Grid(const RadialProblem& p) : h(p.h) {
    const int n = static_cast<int>(std::lround(p.rho_max / p.h));
    v.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      v[i] = p.alpha_beta * p.potential(i * p.h);
      if (i > 0 && !std::isfinite(v[i])) {
        throw Error(ErrorCode::NonFinite, "potential is not finite at rho = " + std::to_string(i * p.h));
      }
    }
  }

  double min_value() const { return *std::min_element(v.begin() + 1, v.end()); }
};

inline ShootResult shoot(const Grid& g, double lambda) {
  const std::size_t n = g.v.size() - 1;
  const double k = g.h * g.h / 6.0;  // h^2/12 * 2
  const auto c = [&](std::size_t i) { return 1.0 - k * (g.v[i] - lambda); };
  double u_prev = 0.0;
  double u = g.h;
  double c_prev = 0.0;  // multiplies u(0) = 0; the origin value may be singular
  double c_cur = c(1);
  int nodes = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double c_next = c(i + 1);
    const double u_next = ((12.0 - 10.0 * c_cur) * u - c_prev * u_prev) / c_next;
    if (u_next * u < 0.0) ++nodes;
    u_prev = u;
    u = u_next;
    if (std::abs(u) > 1e100) {
      u *= 1e-100;
      u_prev *= 1e-100;
    }
    c_prev = c_cur;
    c_cur = c_next;
  }
  return {u, nodes};
}

inline bool below_ground_state(const ShootResult& r) { return r.node_count == 0 && r.endpoint > 0.0; }

}  // namespace detail

/// Propagates u from u(0) = 0, u(h) = h out to rho_max.
inline ShootResult shoot(const RadialProblem& p, double lambda) {
  detail::validate(p);
  if (!(lambda < 0.0)) throw Error(ErrorCode::Domain, "shoot requires lambda < 0");
  return detail::shoot(detail::Grid(p), lambda);
}

/// Ground state by bisection on lambda in (alpha*beta min W, 0).
inline OracleResult ground_state(const RadialProblem& p) {
  detail::validate(p);
  const detail::Grid grid(p);
  double lo = std::min(grid.min_value(), 0.0);
  double hi = 0.0;
  if (detail::below_ground_state(detail::shoot(grid, -std::numeric_limits<double>::min()))) {
    throw Error(ErrorCode::NoBoundState, "ground_state: no bound state below lambda = 0");
  }
  if (!detail::below_ground_state(detail::shoot(grid, lo))) {
    throw Error(ErrorCode::NoBoundState, "ground_state: lower bracket is not below the ground state");
  }
  int iterations = 0;
  while (hi - lo > p.lambda_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (detail::below_ground_state(detail::shoot(grid, mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  OracleResult out;
  out.lambda = 0.5 * (lo + hi);
  out.eps_over_alpha2 = out.lambda / (p.alpha_beta * p.alpha_beta);
  out.node_count = detail::shoot(grid, lo).node_count;
  out.iterations = iterations;
  out.grid_points = static_cast<int>(grid.v.size());
  return out;
}

inline std::function<double(double)> coulomb_potential() {
  return [](double rho) { return -1.0 / rho; };
}

}  // namespace bihydro::numerov
