#pragma once

#include <cmath>

#include "bihydro/specfun.hpp"

namespace bihydro::morse {

/// Parameters of the Morse-type surrogate
///   W_s(rho) = -[G (1 - exp(-kappa (rho - b)))^2 + V0 + B(1/4,1/4)/4].
struct MorseParams {
  double G = -2.0;
  double V0 = 0.0;
  double kappa = 0.5;
  double b = -0.5;

  bool valid() const {
    return std::isfinite(G) && std::isfinite(V0) && std::isfinite(kappa) && std::isfinite(b) &&
           kappa > 0.0;
  }
};

/// The published surrogate parameters.
inline constexpr MorseParams kPublishedParams{-1.8300, 0.09805, 0.58520, -0.45720};

inline double morse_w(const MorseParams& p, double rho) {
  const double e = 1.0 - std::exp(-p.kappa * (rho - p.b));
  return -(p.G * e * e + p.V0 + specfun::quarter_beta());
}

/// Limit of morse_w as rho -> infinity.
inline double morse_w_asymptote(const MorseParams& p) {
  return -(p.G + p.V0 + specfun::quarter_beta());
}

}  // namespace bihydro::morse
