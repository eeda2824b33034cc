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

#include "contsynth/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace contsynth::selftest {

double sphere(const cma::Vector& x) { return x.squaredNorm(); }

double rosenbrock(const cma::Vector& x) {
  double f = 0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    f += 100.0 * a * a + b * b;
  }
  return f;
}

ConvergenceSummary convergence(const std::function<double(const cma::Vector&)>& f,
                               const cma::Vector& m0, double sigma0, long max_evals, double target,
                               int runs) {
  ConvergenceSummary s;
  s.runs = runs;
  for (int seed = 1; seed <= runs; ++seed) {
    cma::Rng rng(static_cast<std::uint64_t>(seed));
    const auto r = cma::minimize(f, m0, sigma0, max_evals, target, rng);
    s.final_values.push_back(r.best);
    s.evaluations.push_back(r.evaluations);
    if (r.reached_target) ++s.reached;
  }
  auto sorted = s.final_values;
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  s.median_final = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

ConvergenceSummary sphere_10d(int runs) {
  return convergence(sphere, cma::Vector::Ones(10), 0.5, 5000, 1e-10, runs);
}

ConvergenceSummary rosenbrock_5d(int runs) {
  return convergence(rosenbrock, cma::Vector::Zero(5), 0.5, 50000, 1e-6, runs);
}

namespace {

template <class M>
bool same_bits(const M& a, const M& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

bool bit_identical(const cma::State& a, const cma::State& b) {
  return a.params.lambda == b.params.lambda && a.params.mu == b.params.mu &&
         same_bits(a.params.weights, b.params.weights) && same_bits(a.mean, b.mean) &&
         same_bits(a.sigma, b.sigma) && same_bits(a.sigma0, b.sigma0) && same_bits(a.cov, b.cov) &&
         same_bits(a.p_sigma, b.p_sigma) && same_bits(a.p_c, b.p_c) &&
         same_bits(a.basis, b.basis) && same_bits(a.scales, b.scales) &&
         a.generation == b.generation && a.eval_count == b.eval_count &&
         a.eigen_generation == b.eigen_generation && a.eigen_dirty == b.eigen_dirty;
}

bool rank_invariance(std::uint64_t seed) {
  cma::Rng rng(seed);
  cma::State s = cma::init(cma::default_params(6), cma::Vector::Constant(6, 0.3), 0.4);
  // Run a few generations so paths and covariance are non-trivial.
  for (int g = 0; g < 5; ++g) {
    auto genomes = cma::sample(s, rng);
    std::vector<double> f;
    for (const auto& x : genomes) f.push_back(sphere(x));
    cma::update_from_objectives(s, genomes, f);
  }
  const auto genomes = cma::sample(s, rng);
  std::vector<double> f, affine, expo;
  for (const auto& x : genomes) {
    f.push_back(sphere(x));
    affine.push_back(2.0 * f.back() + 7.0);
    expo.push_back(std::exp(f.back()));
  }
  cma::State a = s, b = s, c = s;
  cma::update_from_objectives(a, genomes, f);
  cma::update_from_objectives(b, genomes, affine);
  cma::update_from_objectives(c, genomes, expo);
  return bit_identical(a, b) && bit_identical(a, c);
}

double min_eigenvalue_over_run(int generations, std::uint64_t seed) {
  cma::Rng rng(seed);
  cma::State s = cma::init(cma::default_params(5), cma::Vector::Zero(5), 0.5);
  double lowest = std::numeric_limits<double>::infinity();
  for (int g = 0; g < generations; ++g) {
    auto genomes = cma::sample(s, rng);
    std::vector<double> f;
    for (const auto& x : genomes) f.push_back(rosenbrock(x));
    cma::update_from_objectives(s, genomes, f);
    Eigen::SelfAdjointEigenSolver<cma::Matrix> solver(s.cov, Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, solver.eigenvalues().minCoeff());
  }
  return lowest;
}

std::vector<Check> run_all() {
  std::vector<Check> checks;
  {
    const auto s = sphere_10d();
    std::ostringstream d;
    d << s.reached << "/" << s.runs << " runs reached 1e-10 within 5000 evals; median final f = "
      << s.median_final;
    checks.push_back({"sphere-10d", s.reached >= 18 && s.median_final < 1e-10, d.str()});
  }
  {
    const auto s = rosenbrock_5d();
    std::ostringstream d;
    d << s.reached << "/" << s.runs << " runs reached 1e-6 within 50000 evals";
    checks.push_back({"rosenbrock-5d", s.reached >= 16, d.str()});
  }
  checks.push_back({"rank-invariance", rank_invariance(), "f, 2f+7 and exp(f) give identical states"});
  {
    const double lo = min_eigenvalue_over_run();
    std::ostringstream d;
    d << "min eigenvalue over 1000 Rosenbrock updates = " << lo;
    checks.push_back({"spd-preservation", lo > 0, d.str()});
  }
  return checks;
}

}  // namespace contsynth::selftest
