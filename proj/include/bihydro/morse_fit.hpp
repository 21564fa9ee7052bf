#pragma once

// Fits the four Morse surrogate parameters to a table of the exact potential.
//
// The inner solver is a damped Gauss-Newton (Levenberg-Marquardt) loop on a
// weighted sum of squares with a forward-difference Jacobian. kappa is carried
// as log(kappa), so it stays positive. The default Minimax objective wraps the
// inner solver in Lawson's reweighting, which drives the weighted
// least-squares solution towards the Chebyshev (smallest maximum residual)
// fit.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "bihydro/bic_potential.hpp"
#include "bihydro/errors.hpp"
#include "bihydro/morse_model.hpp"

namespace bihydro::morse {

enum class FitObjective { LeastSquares, Minimax };

inline const char* to_string(FitObjective o) {
  return o == FitObjective::LeastSquares ? "least_squares" : "minimax";
}

struct FitConfig {
  double rho_min = 0.0;
  double rho_max = 10.0;
  int n_samples = 200;
  int max_iters = 200;     // LM iterations per weighted solve
  double step_tol = 1e-10;  // relative LM step norm
  MorseParams init{};
  FitObjective objective = FitObjective::Minimax;
  int max_passes = 400;      // Lawson reweighting passes
  double minimax_tol = 1e-6;  // relative change of the max residual between passes
};

struct FitReport {
  MorseParams params;
  double rms_residual = 0.0;
  double max_abs_residual = 0.0;
  int iterations = 0;  // LM iterations (LeastSquares) or reweighting passes (Minimax)
  bool converged = false;
  FitObjective objective = FitObjective::Minimax;
  std::vector<double> objective_history;  // accepted LM objectives of the last weighted solve
};

namespace detail {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

inline Vec4 to_internal(const MorseParams& p) { return {p.G, p.V0, std::log(p.kappa), p.b}; }
inline MorseParams to_params(const Vec4& v) { return {v[0], v[1], std::exp(v[2]), v[3]}; }

struct Samples {
  std::vector<double> rho;
  std::vector<double> w;
};

inline std::vector<double> residuals(const MorseParams& p, const Samples& s) {
  std::vector<double> r(s.rho.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = morse_w(p, s.rho[i]) - s.w[i];
  return r;
}

inline double weighted_cost(const std::vector<double>& r, const std::vector<double>& weight) {
  double c = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) c += weight[i] * r[i] * r[i];
  return 0.5 * c;
}

struct LmOutcome {
  Vec4 x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

inline void check_kappa(const Vec4& x) {
  if (!(std::exp(x[2]) > 1e-8)) {
    throw Error(ErrorCode::SingularJacobian, "morse fit degenerated: kappa -> 0");
  }
}

inline LmOutcome levenberg_marquardt(Vec4 x, const Samples& s, const std::vector<double>& weight,
                                     const FitConfig& cfg) {
  const std::size_t m = s.rho.size();
  auto r = residuals(to_params(x), s);
  double cost = weighted_cost(r, weight);
  double damping = 1e-3;
  LmOutcome out;
  out.history.push_back(cost);
  Eigen::MatrixXd jac(m, 4);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    check_kappa(x);
    for (int j = 0; j < 4; ++j) {
      Vec4 xp = x;
      const double h = 1e-6 * std::max(std::abs(x[j]), 1e-3);
      xp[j] += h;
      const auto rp = residuals(to_params(xp), s);
      for (std::size_t i = 0; i < m; ++i) jac(i, j) = (rp[i] - r[i]) / h;
    }
    Mat4 jtj = Mat4::Zero();
    Vec4 grad = Vec4::Zero();
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::RowVector4d row = jac.row(i);
      jtj.noalias() += weight[i] * row.transpose() * row;
      grad.noalias() += weight[i] * r[i] * row.transpose();
    }
    if (jtj.diagonal().minCoeff() <= 0.0) {
      throw Error(ErrorCode::SingularJacobian, "morse fit: a parameter has no effect on the residuals");
    }
    ++out.iterations;

    bool accepted = false;
    Vec4 step = Vec4::Zero();
    while (damping < 1e16) {
      Mat4 lhs = jtj;
      lhs.diagonal() += damping * jtj.diagonal();
      step = lhs.ldlt().solve(-grad);
      const Vec4 trial = x + step;
      const auto r_trial = residuals(to_params(trial), s);
      const double c_trial = weighted_cost(r_trial, weight);
      if (std::isfinite(c_trial) && c_trial < cost) {
        x = trial;
        r = r_trial;
        cost = c_trial;
        damping = std::max(damping / 10.0, 1e-12);
        accepted = true;
        out.history.push_back(cost);
        break;
      }
      damping *= 10.0;
    }
    // No descent direction left: stationary to working precision.
    if (!accepted || step.norm() < cfg.step_tol * (x.norm() + cfg.step_tol)) {
      out.converged = true;
      break;
    }
  }
  out.x = x;
  return out;
}

inline Samples sample_table(const bic::PotentialTable& table, const FitConfig& cfg) {
  if (table.rho.size() < 2 || table.rho.front() > cfg.rho_min + 1e-12 ||
      table.rho.back() < cfg.rho_max - 1e-12) {
    throw Error(ErrorCode::Domain, "fit: table does not cover the fit window");
  }
  Samples s;
  s.rho.resize(cfg.n_samples);
  s.w.resize(cfg.n_samples);
  const double step = (cfg.rho_max - cfg.rho_min) / (cfg.n_samples - 1);
  for (int k = 0; k < cfg.n_samples; ++k) {
    s.rho[k] = k == cfg.n_samples - 1 ? cfg.rho_max : cfg.rho_min + k * step;
  }
  const bool same_grid =
      static_cast<int>(table.rho.size()) == cfg.n_samples &&
      std::equal(table.rho.begin(), table.rho.end(), s.rho.begin(),
                 [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); });
  if (same_grid) {
    s.w = table.values;
  } else {
    const bic::SplinePotential spline(table);
    for (int k = 0; k < cfg.n_samples; ++k) s.w[k] = spline(s.rho[k]);
  }
  return s;
}

inline void summarize(FitReport& rep, const Samples& s) {
  const auto r = residuals(rep.params, s);
  double sq = 0.0;
  double mx = 0.0;
  for (double v : r) {
    sq += v * v;
    mx = std::max(mx, std::abs(v));
  }
  rep.rms_residual = std::sqrt(sq / r.size());
  rep.max_abs_residual = mx;
}

}  // namespace detail

inline FitReport fit(const bic::PotentialTable& table, const FitConfig& cfg = {}) {
  if (!(cfg.rho_min >= 0.0) || !(cfg.rho_min < cfg.rho_max) || cfg.n_samples < 8 ||
      cfg.max_iters < 1 || !(cfg.step_tol > 0.0)) {
    throw Error(ErrorCode::Domain, "fit: invalid FitConfig");
  }
  MorseParams init = cfg.init;
  init.kappa = std::abs(init.kappa);
  if (!init.valid()) throw Error(ErrorCode::Domain, "fit: initial parameters must be finite with kappa != 0");

  const auto samples = detail::sample_table(table, cfg);
  const std::size_t m = samples.rho.size();
  std::vector<double> weight(m, 1.0 / static_cast<double>(m));

  auto lm = detail::levenberg_marquardt(detail::to_internal(init), samples, weight, cfg);
  FitReport rep;
  rep.objective = cfg.objective;
  rep.params = detail::to_params(lm.x);
  rep.iterations = lm.iterations;
  rep.converged = lm.converged;
  rep.objective_history = lm.history;
  detail::summarize(rep, samples);
  if (cfg.objective == FitObjective::LeastSquares) return rep;
  // Data the model reproduces exactly: the reweighting has nothing to balance.
  double scale = 0.0;
  for (double w : samples.w) scale = std::max(scale, std::abs(w));
  if (rep.max_abs_residual <= 1e-13 * std::max(scale, 1.0)) return rep;

  // Lawson: w_i <- w_i |r_i|, renormalized, until the max residual settles.
  FitReport best = rep;
  double previous_max = rep.max_abs_residual;
  detail::Vec4 x = lm.x;
  best.converged = false;
  best.iterations = 0;
  for (int pass = 1; pass <= cfg.max_passes; ++pass) {
    const auto r = detail::residuals(detail::to_params(x), samples);
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      weight[i] *= std::abs(r[i]);
      norm += weight[i];
    }
    if (!(norm > 0.0)) {  // exact interpolation
      best.converged = true;
      best.iterations = pass;
      return best;
    }
    for (double& w : weight) w /= norm;

    lm = detail::levenberg_marquardt(x, samples, weight, cfg);
    x = lm.x;
    FitReport current;
    current.objective = cfg.objective;
    current.params = detail::to_params(x);
    current.objective_history = lm.history;
    detail::summarize(current, samples);
    if (current.max_abs_residual < best.max_abs_residual) {
      current.iterations = pass;
      best = current;
    }
    best.iterations = pass;
    if (std::abs(current.max_abs_residual - previous_max) <= cfg.minimax_tol * current.max_abs_residual) {
      best.converged = true;
      break;
    }
    previous_max = current.max_abs_residual;
  }
  return best;
}

}  // namespace bihydro::morse
