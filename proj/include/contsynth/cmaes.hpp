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

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace contsynth::cma {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Strategy constants. All of them follow from (n, lambda).
struct Params {
  int n = 0;
  int lambda = 0;
  int mu = 0;
  Vector weights;  // w_1 >= ... >= w_mu > 0, sum 1
  double mu_eff = 0;
  double c_sigma = 0;
  double d_sigma = 0;
  double c_c = 0;
  double c_1 = 0;
  double c_mu = 0;
  double alpha = 1.5;   // p_c stall threshold, in units of sqrt(n)
  double chi_n = 0;     // E||N(0, I)||
  int eigen_interval = 1;
};

/// Standard settings for dimension n. `lambda` <= 0 selects
/// 4 + floor(3 ln n); an explicit value must be >= 2.
Params default_params(int n, int lambda = 0);

struct State {
  Params params;
  Vector mean;
  double sigma = 1;
  double sigma0 = 1;
  Matrix cov;
  Vector p_sigma;
  Vector p_c;
  Matrix basis;   // B: eigenvectors of cov, column-wise
  Vector scales;  // Dg: square roots of the eigenvalues
  int generation = 0;
  long eval_count = 0;
  int eigen_generation = 0;
  bool eigen_dirty = false;
  bool eigen_every_generation = false;

  double condition() const;
};

State init(Params params, Vector mean, double sigma0);

/// Recomputes B and Dg when the covariance changed and the lazy cadence
/// allows it (or unconditionally with `force`).
void refresh_eigen(State& s, bool force = false);

/// Replaces the covariance and refreshes the eigen cache.
void set_covariance(State& s, const Matrix& cov);

/// Draws lambda genomes m + sigma * B * diag(Dg) * z.
std::vector<Vector> sample(State& s, Rng& rng);

/// One generation: weighted recombination, CSA, rank-one and rank-mu
/// covariance adaptation. `ranked` is sorted best first and holds at least
/// mu genomes.
void update(State& s, std::span<const Vector> ranked);

/// Sorts `genomes` by ascending objective (stable) and calls update().
void update_from_objectives(State& s, std::span<const Vector> genomes,
                            std::span<const double> objectives);

enum class StagnationReason : std::uint8_t {
  NoEffectAxis,
  NoEffectCoord,
  ConditionCov,
  TolX,
  TolStagnation,
};

std::string_view to_string(StagnationReason r);

inline constexpr double kMaxCondition = 1e14;
inline constexpr double kTolXFactor = 1e-12;

/// Generations without improvement of the best objective before
/// TolStagnation fires.
int stagnation_window(const Params& p);

/// `best_history` holds the best objective of each generation since the
/// last (re)start, oldest first.
std::optional<StagnationReason> check_stagnation(const State& s,
                                                 std::span<const double> best_history);

struct TraceRow {
  int generation = 0;
  double sigma = 0;
  double condition = 0;
  double mean_norm = 0;
  double best = 0;
  long eval_count = 0;
  Vector mean;
};

TraceRow trace_row(const State& s, double best);
void write_trace_header(std::ostream& out, bool with_mean, int n);
void write_trace_row(std::ostream& out, const TraceRow& row, bool with_mean);

/// Plain minimization driver used by the self-tests.
struct MinimizeResult {
  double best = 0;
  Vector best_x;
  long evaluations = 0;
  int generations = 0;
  bool reached_target = false;
};

MinimizeResult minimize(const std::function<double(const Vector&)>& f, const Vector& m0,
                        double sigma0, long max_evals, double target, Rng& rng);

}  // namespace contsynth::cma
