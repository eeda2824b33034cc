/* Copyright 2026 The ContSynth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "contsynth/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "contsynth/error.hpp"

namespace contsynth::cma {

Params default_params(int n, int lambda) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 1");
  Params p;
  p.n = n;
  const double dn = n;
  p.lambda = lambda > 0 ? lambda : 4 + static_cast<int>(std::floor(3.0 * std::log(dn)));
  if (p.lambda < 2) throw Error(ErrorCode::ConfigError, "population size must be >= 2");
  p.mu = p.lambda / 2;

  p.weights.resize(p.mu);
  for (int i = 0; i < p.mu; ++i) p.weights[i] = std::log(p.mu + 0.5) - std::log(i + 1.0);
  p.weights /= p.weights.sum();
  p.mu_eff = 1.0 / p.weights.squaredNorm();

  const double me = p.mu_eff;
  p.c_sigma = (me + 2.0) / (dn + me + 5.0);
  p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((me - 1.0) / (dn + 1.0)) - 1.0) + p.c_sigma;
  p.c_c = (4.0 + me / dn) / (dn + 4.0 + 2.0 * me / dn);
  p.c_1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + me);
  p.c_mu = std::min(1.0 - p.c_1, 2.0 * (me - 2.0 + 1.0 / me) / ((dn + 2.0) * (dn + 2.0) + me));
  p.chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));
  p.eigen_interval =
      std::max(1, static_cast<int>(std::floor(1.0 / (10.0 * dn * (p.c_1 + p.c_mu)))));
  return p;
}

double State::condition() const {
  const double hi = scales.maxCoeff();
  const double lo = scales.minCoeff();
  return (hi * hi) / (lo * lo);
}

State init(Params params, Vector mean, double sigma0) {
  const int n = params.n;
  if (mean.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "mean has dimension " + std::to_string(mean.size()) +
                                                  ", expected " + std::to_string(n));
  }
  if (!(sigma0 > 0)) throw Error(ErrorCode::ConfigError, "sigma0 must be positive");
  State s;
  s.params = std::move(params);
  s.mean = std::move(mean);
  s.sigma = sigma0;
  s.sigma0 = sigma0;
  s.cov = Matrix::Identity(n, n);
  s.p_sigma = Vector::Zero(n);
  s.p_c = Vector::Zero(n);
  s.basis = Matrix::Identity(n, n);
  s.scales = Vector::Ones(n);
  return s;
}

void refresh_eigen(State& s, bool force) {
  if (!s.eigen_dirty && !force) return;
  const bool due = s.eigen_every_generation ||
                   s.generation - s.eigen_generation >= s.params.eigen_interval;
  if (!force && !due) return;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.cov);
  Vector eig = solver.eigenvalues();
  // Round-off can push tiny eigenvalues to <= 0; clamp so sampling and
  // C^{-1/2} stay finite.
  const double floor = std::max(eig.maxCoeff(), 1.0) * 1e-300;
  eig = eig.cwiseMax(floor);
  s.basis = solver.eigenvectors();
  s.scales = eig.cwiseSqrt();
  s.eigen_generation = s.generation;
  s.eigen_dirty = false;
}

void set_covariance(State& s, const Matrix& cov) {
  if (cov.rows() != s.params.n || cov.cols() != s.params.n) {
    throw Error(ErrorCode::DimensionMismatch, "covariance shape");
  }
  s.cov = cov;
  s.eigen_dirty = true;
  refresh_eigen(s, true);
}

std::vector<Vector> sample(State& s, Rng& rng) {
  refresh_eigen(s);
  const int n = s.params.n;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(s.params.lambda));
  Vector z(n);
  for (int k = 0; k < s.params.lambda; ++k) {
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    out.push_back(s.mean + s.sigma * (s.basis * s.scales.cwiseProduct(z)));
  }
  return out;
}

void update(State& s, std::span<const Vector> ranked) {
  const Params& p = s.params;
  if (static_cast<int>(ranked.size()) < p.mu) {
    throw Error(ErrorCode::NotEnoughRanked, "got " + std::to_string(ranked.size()) +
                                                " genomes, need " + std::to_string(p.mu));
  }
  const int n = p.n;
  const Vector old_mean = s.mean;

  Vector mean = Vector::Zero(n);
  for (int i = 0; i < p.mu; ++i) mean += p.weights[i] * ranked[static_cast<std::size_t>(i)];
  s.mean = mean;

  const Vector y_w = (s.mean - old_mean) / s.sigma;

  // C^{-1/2} = B diag(1/Dg) B^T
  const Vector c_inv_sqrt_y = s.basis * (s.basis.transpose() * y_w).cwiseQuotient(s.scales);
  s.p_sigma = (1.0 - p.c_sigma) * s.p_sigma +
              std::sqrt(p.c_sigma * (2.0 - p.c_sigma) * p.mu_eff) * c_inv_sqrt_y;
  const double ps_norm = s.p_sigma.norm();

  const double h = ps_norm <= p.alpha * std::sqrt(static_cast<double>(n)) ? 1.0 : 0.0;
  s.p_c = (1.0 - p.c_c) * s.p_c + h * std::sqrt(p.c_c * (2.0 - p.c_c) * p.mu_eff) * y_w;
  const double c_s = (1.0 - h * h) * p.c_1 * p.c_c * (2.0 - p.c_c);

  Matrix rank_mu = Matrix::Zero(n, n);
  for (int i = 0; i < p.mu; ++i) {
    const Vector y = (ranked[static_cast<std::size_t>(i)] - old_mean) / s.sigma;
    rank_mu.noalias() += p.weights[i] * y * y.transpose();
  }
  s.cov = (1.0 - p.c_1 - p.c_mu + c_s) * s.cov + p.c_1 * s.p_c * s.p_c.transpose() +
          p.c_mu * rank_mu;
  s.cov = (0.5 * (s.cov + s.cov.transpose())).eval();

  s.sigma *= std::exp((p.c_sigma / p.d_sigma) * (ps_norm / p.chi_n - 1.0));

  ++s.generation;
  s.eigen_dirty = true;
}

void update_from_objectives(State& s, std::span<const Vector> genomes,
                            std::span<const double> objectives) {
  std::vector<std::size_t> order(genomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return objectives[a] < objectives[b]; });
  std::vector<Vector> ranked;
  ranked.reserve(order.size());
  for (auto i : order) ranked.push_back(genomes[i]);
  update(s, ranked);
}

std::string_view to_string(StagnationReason r) {
  switch (r) {
    case StagnationReason::NoEffectAxis: return "NoEffectAxis";
    case StagnationReason::NoEffectCoord: return "NoEffectCoord";
    case StagnationReason::ConditionCov: return "ConditionCov";
    case StagnationReason::TolX: return "TolX";
    case StagnationReason::TolStagnation: return "TolStagnation";
  }
  return "?";
}

int stagnation_window(const Params& p) {
  return 10 + static_cast<int>(std::ceil(30.0 * p.n / p.lambda));
}

std::optional<StagnationReason> check_stagnation(const State& s,
                                                 std::span<const double> best_history) {
  const int n = s.params.n;

  for (int i = 0; i < n; ++i) {
    const Vector shifted = s.mean + 0.1 * s.sigma * s.scales[i] * s.basis.col(i);
    if ((shifted.array() == s.mean.array()).all()) return StagnationReason::NoEffectAxis;
  }
  for (int i = 0; i < n; ++i) {
    if (s.mean[i] + 0.2 * s.sigma * std::sqrt(s.cov(i, i)) == s.mean[i]) {
      return StagnationReason::NoEffectCoord;
    }
  }
  if (s.condition() > kMaxCondition) return StagnationReason::ConditionCov;

  const double spread =
      std::max(s.cov.diagonal().cwiseSqrt().maxCoeff(), s.p_c.cwiseAbs().maxCoeff());
  if (s.sigma * spread < kTolXFactor * s.sigma0) return StagnationReason::TolX;

  const auto window = static_cast<std::size_t>(stagnation_window(s.params));
  if (best_history.size() > window) {
    const auto split = best_history.end() - static_cast<std::ptrdiff_t>(window);
    const double before = *std::min_element(best_history.begin(), split);
    const double recent = *std::min_element(split, best_history.end());
    if (!(recent < before)) return StagnationReason::TolStagnation;
  }
  return std::nullopt;
}

TraceRow trace_row(const State& s, double best) {
  return {s.generation, s.sigma, s.condition(), s.mean.norm(), best, s.eval_count, s.mean};
}

void write_trace_header(std::ostream& out, bool with_mean, int n) {
  out << "gen,sigma,cond,mean_norm,best_f,eval_count";
  if (with_mean) {
    for (int i = 0; i < n; ++i) out << ",m" << i;
  }
  out << '\n';
}

void write_trace_row(std::ostream& out, const TraceRow& row, bool with_mean) {
  const auto old_precision = out.precision(17);
  out << row.generation << ',' << row.sigma << ',' << row.condition << ',' << row.mean_norm << ','
      << row.best << ',' << row.eval_count;
  if (with_mean) {
    for (Eigen::Index i = 0; i < row.mean.size(); ++i) out << ',' << row.mean[i];
  }
  out << '\n';
  out.precision(old_precision);
}

MinimizeResult minimize(const std::function<double(const Vector&)>& f, const Vector& m0,
                        double sigma0, long max_evals, double target, Rng& rng) {
  State s = init(default_params(static_cast<int>(m0.size())), m0, sigma0);
  MinimizeResult result;
  result.best = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  while (s.eval_count < max_evals) {
    auto genomes = sample(s, rng);
    values.resize(genomes.size());
    for (std::size_t k = 0; k < genomes.size(); ++k) {
      values[k] = f(genomes[k]);
      if (values[k] < result.best) {
        result.best = values[k];
        result.best_x = genomes[k];
      }
    }
    s.eval_count += static_cast<long>(genomes.size());
    if (result.best < target) {
      result.reached_target = true;
      break;
    }
    update_from_objectives(s, genomes, values);
  }
  result.evaluations = s.eval_count;
  result.generations = s.generation;
  return result;
}

}  // namespace contsynth::cma
