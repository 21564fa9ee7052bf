#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on one dimension.
//
// Endpoint singularities of inverse-square-root type are removed before the
// adaptive stage with y = endpoint -/+ t^2, and a semi-infinite upper limit is
// folded onto [0, 1) with r = lower + t / (1 - t).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "bihydro/errors.hpp"

namespace bihydro::quad {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadSpec {
  double lower = 0.0;
  double upper = 1.0;  // may be kInfinity
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  bool singular_lower = false;
  bool singular_upper = false;
  int max_subdivisions = 10000;
};

struct QuadResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  int subdivisions = 0;
};

namespace detail {

// QUADPACK qk15 abscissae (descending, last is the centre) and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using Integrand = std::function<double(double)>;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int piece;
  bool operator<(const Segment& other) const { return error < other.error; }
};

inline double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFinite,
                "integrand returned a non-finite value at x = " + std::to_string(x));
  }
  return v;
}

// One 15-point Kronrod panel with the QUADPACK error heuristic.
inline Segment kronrod15(const Integrand& f, double a, double b, int piece) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  const double fc = checked(f(centre), centre);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f(centre - dx), centre - dx);
    f2[j] = checked(f(centre + dx), centre + dx);
    res_k += kWgk[j] * (f1[j] + f2[j]);
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double value = res_k * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return {a, b, value, err, piece};
}

struct Piece {
  Integrand g;
  double t0;
  double t1;
};

inline void add_finite(std::vector<Piece>& out, const Integrand& f, double lo, double hi,
                       bool sing_lo, bool sing_hi) {
  if (sing_lo && sing_hi) {
    const double mid = 0.5 * (lo + hi);
    add_finite(out, f, lo, mid, true, false);
    add_finite(out, f, mid, hi, false, true);
    return;
  }
  const double span = std::sqrt(hi - lo);
  if (sing_hi) {
    out.push_back({[f, hi](double t) { return 2.0 * t * f(hi - t * t); }, 0.0, span});
  } else if (sing_lo) {
    out.push_back({[f, lo](double t) { return 2.0 * t * f(lo + t * t); }, 0.0, span});
  } else {
    out.push_back({f, lo, hi});
  }
}

}  // namespace detail

/// Integrates f over [spec.lower, spec.upper]. Throws NonConvergence when the
/// subdivision budget runs out before max(abs_tol, rel_tol*|I|) is met.
template <class F>
QuadResult integrate(F&& f, const QuadSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw Error(ErrorCode::Domain, "integrate: tolerances must be positive");
  }
  if (!(spec.lower < spec.upper) || !std::isfinite(spec.lower) || std::isnan(spec.upper)) {
    throw Error(ErrorCode::Domain, "integrate: requires finite lower < upper");
  }
  const bool infinite = std::isinf(spec.upper);
  if (infinite && spec.singular_upper) {
    throw Error(ErrorCode::Domain, "integrate: an infinite upper limit cannot be flagged singular");
  }

  const detail::Integrand fn = std::forward<F>(f);
  std::vector<detail::Piece> pieces;
  if (!infinite) {
    detail::add_finite(pieces, fn, spec.lower, spec.upper, spec.singular_lower, spec.singular_upper);
  } else {
    double start = spec.lower;
    if (spec.singular_lower) {
      detail::add_finite(pieces, fn, spec.lower, spec.lower + 1.0, true, false);
      start = spec.lower + 1.0;
    }
    pieces.push_back({[fn, start](double t) {
                        const double s = 1.0 - t;
                        return fn(start + t / s) / (s * s);
                      },
                      0.0, 1.0});
  }

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    auto seg = detail::kronrod15(pieces[i].g, pieces[i].t0, pieces[i].t1, i);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }

  const auto tolerance = [&](double v) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(v)); };
  int subdivisions = 0;
  while (true) {
    if (total_err <= tolerance(total)) {
      // Re-sum to shed accumulated drift from the running totals.
      double v = 0.0;
      double e = 0.0;
      for (auto copy = heap; !copy.empty(); copy.pop()) {
        v += copy.top().value;
        e += copy.top().error;
      }
      total = v;
      total_err = e;
      if (total_err <= tolerance(total)) break;
    }
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw Error(ErrorCode::NonConvergence,
                  "integrate: subdivision budget of " + std::to_string(spec.max_subdivisions) +
                      " intervals exhausted (error estimate " + std::to_string(total_err) + ")");
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw Error(ErrorCode::NonConvergence, "integrate: interval collapsed to roundoff");
    }
    const auto& g = pieces[worst.piece].g;
    auto left = detail::kronrod15(g, worst.a, mid, worst.piece);
    auto right = detail::kronrod15(g, mid, worst.b, worst.piece);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  return {total, total_err, subdivisions};
}

}  // namespace bihydro::quad
