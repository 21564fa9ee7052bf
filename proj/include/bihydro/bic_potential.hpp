#pragma once

// The Born-Infeld-Coulomb potential in dimensionless form.
//
// Lengths are rho = r / beta. Z(rho) is the screening function, W(rho) =
// -Z(rho)/rho the potential shape, and phi(r) Born's electrostatic potential
// integral. Units follow hbar = m_e = c = 1 with lengths in Compton
// wavelengths.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "bihydro/errors.hpp"
#include "bihydro/morse_model.hpp"
#include "bihydro/quadrature.hpp"
#include "bihydro/specfun.hpp"

namespace bihydro::bic {

inline constexpr double kFineStructure = 1.0 / 137.036;

/// Upper limit sqrt(2)/4 of the screening integral.
inline constexpr double kYMax = std::numbers::sqrt2 / 4.0;

/// Largest rho accepted by z_of_rho. Z is the difference of two terms of size
/// ~1.854 rho, so its absolute error grows like 2e-12 rho.
inline constexpr double kRhoCap = 1e6;

enum class PotentialKind { ExactBIC, MorseSurrogate };

inline const char* to_string(PotentialKind kind) {
  return kind == PotentialKind::ExactBIC ? "exact_bic" : "morse_surrogate";
}

struct PotentialTable {
  std::vector<double> rho;
  std::vector<double> values;  // W(rho)
  std::vector<double> z;       // Z(rho); filled for ExactBIC only
  PotentialKind kind = PotentialKind::ExactBIC;
};

/// Integrand of the screening integral,
///   [2y sqrt(1+y^2) - 2y^2 - 1] / [sqrt(1+4y^2-4y sqrt(1+y^2)) sqrt(1+y^2) sqrt(1+rho^4 y^4)].
/// Both differences are rewritten in cancellation-free form; the first radical
/// vanishes linearly at y = sqrt(2)/4.
inline double z_integrand(double y, double rho) {
  if (!(y >= 0.0) || !(y < kYMax)) {
    throw Error(ErrorCode::Domain, "z_integrand requires 0 <= y < sqrt(2)/4");
  }
  const double q = std::sqrt(1.0 + y * y);
  const double numerator = 2.0 * y / (q + y) - 1.0;
  const double c = 2.0 * std::numbers::sqrt2 * y;
  const double radicand = (1.0 - c) * (1.0 + c) / (1.0 + 4.0 * y * y + 4.0 * y * q);
  const double r2y2 = rho * rho * y * y;
  return numerator / (std::sqrt(radicand) * q * std::sqrt(1.0 + r2y2 * r2y2));
}

/// The integral part I(rho) of Z(rho) = rho^2 I(rho) + B(1/4,1/4)/4 rho.
inline quad::QuadResult screening_integral(double rho) {
  // For large rho the integrand is a plateau of width ~1/rho followed by a
  // 1/(rho y)^2 tail, so [min(1/rho, ymax/2), ymax/2] is cut geometrically
  // (factor 4) and the last half-interval carries the endpoint singularity.
  const double half = 0.5 * kYMax;
  const auto f = [rho](double y) { return z_integrand(y, rho); };
  quad::QuadResult total;
  const auto add = [&](double lo, double hi, bool singular_upper) {
    quad::QuadSpec spec;
    spec.lower = lo;
    spec.upper = hi;
    spec.singular_upper = singular_upper;
    const auto piece = quad::integrate(f, spec);
    total.value += piece.value;
    total.abs_err_estimate += piece.abs_err_estimate;
    total.subdivisions += piece.subdivisions;
  };
  double lo = 0.0;
  double hi = rho > 0.0 ? std::min(1.0 / rho, half) : half;
  while (hi < half) {
    add(lo, hi, false);
    lo = hi;
    hi = std::min(4.0 * hi, half);
  }
  add(lo, half, false);
  add(half, kYMax, true);
  return total;
}

inline double z_of_rho(double rho) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::Domain, "z_of_rho requires rho >= 0");
  if (rho > kRhoCap) {
    throw Error(ErrorCode::Range, "z_of_rho: rho > 1e6 exceeds the cancellation budget");
  }
  if (rho == 0.0) return 0.0;
  return rho * rho * screening_integral(rho).value + specfun::quarter_beta() * rho;
}

/// W(rho) = -Z(rho)/rho, with the finite limit -B(1/4,1/4)/4 at the origin.
inline double w_of_rho(double rho) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::Domain, "w_of_rho requires rho >= 0");
  if (rho == 0.0) return -specfun::quarter_beta();
  return -z_of_rho(rho) / rho;
}

/// Born's dimensionless potential: the integral of (1+s^4)^(-1/2) over [r, inf).
inline double born_phi(double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::Domain, "born_phi requires r >= 0");
  quad::QuadSpec spec;
  spec.lower = r;
  spec.upper = quad::kInfinity;
  return quad::integrate([](double s) { return 1.0 / std::sqrt(1.0 + s * s * s * s); }, spec).value;
}

/// Uniform-grid table of the exact or surrogate potential shape.
inline PotentialTable tabulate(PotentialKind kind, double rho_min, double rho_max, int n,
                               const std::optional<morse::MorseParams>& params = std::nullopt) {
  if (!(rho_min >= 0.0) || !(rho_min < rho_max) || n < 2) {
    throw Error(ErrorCode::Domain, "tabulate requires 0 <= rho_min < rho_max and n >= 2");
  }
  if (kind == PotentialKind::MorseSurrogate && !params) {
    throw Error(ErrorCode::MissingParameters, "tabulate: Morse surrogate requested without parameters");
  }
  PotentialTable table;
  table.kind = kind;
  table.rho.resize(n);
  table.values.resize(n);
  const double step = (rho_max - rho_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    table.rho[i] = i == n - 1 ? rho_max : rho_min + i * step;
  }
  if (kind == PotentialKind::ExactBIC) {
    table.z.resize(n);
    for (int i = 0; i < n; ++i) {
      const double rho = table.rho[i];
      table.z[i] = z_of_rho(rho);
      table.values[i] = rho == 0.0 ? -specfun::quarter_beta() : -table.z[i] / rho;
    }
  } else {
    for (int i = 0; i < n; ++i) table.values[i] = morse::morse_w(*params, table.rho[i]);
  }
  return table;
}

/// Cubic B-spline interpolant of a uniform PotentialTable. Beyond the table the
/// last value is continued with a Coulomb 1/rho tail.
class SplinePotential {
 public:
  explicit SplinePotential(const PotentialTable& table)
      : rho_min_(table.rho.front()),
        rho_max_(table.rho.back()),
        w_max_(table.values.back()),
        spline_(table.values.data(), table.values.size(), table.rho.front(),
                (table.rho.back() - table.rho.front()) / (table.rho.size() - 1)) {}

  double operator()(double rho) const {
    if (rho > rho_max_) return w_max_ * rho_max_ / rho;
    return spline_(std::max(rho, rho_min_));
  }

 private:
  double rho_min_;
  double rho_max_;
  double w_max_;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

/// Spline of the exact potential on [0, rho_max] with n nodes.
inline SplinePotential exact_bic_spline(double rho_max = 40.0, int n = 2000) {
  return SplinePotential(tabulate(PotentialKind::ExactBIC, 0.0, rho_max, n));
}

}  // namespace bihydro::bic
