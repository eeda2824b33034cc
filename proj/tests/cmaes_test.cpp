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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "contsynth/cmaes.hpp"
#include "contsynth/error.hpp"
#include "contsynth/selftest.hpp"

using namespace contsynth;
using namespace contsynth::cma;

TEST_CASE("default_params") {
  CHECK(default_params(10).lambda == 10);
  CHECK(default_params(1).lambda == 4);
  const auto p2 = default_params(2, 4);
  REQUIRE(p2.mu == 2);
  CHECK(p2.weights[0] > p2.weights[1]);
  CHECK(p2.weights.sum() == doctest::Approx(1.0));

  for (int n : {1, 2, 5, 10, 41, 410}) {
    const auto p = default_params(n);
    CHECK(p.lambda >= 2);
    CHECK(p.mu <= p.lambda / 2);
    CHECK(p.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < p.mu; ++i) CHECK(p.weights[i - 1] >= p.weights[i]);
    CHECK(p.weights[p.mu - 1] > 0);
    CHECK(p.mu_eff >= 1.0);
    CHECK(p.mu_eff <= p.mu + 1e-12);
    CHECK(p.c_1 + p.c_mu <= 1.0);
    CHECK(p.eigen_interval >= 1);
  }
  CHECK_THROWS_AS(default_params(0), Error);
  CHECK_THROWS_AS(default_params(3, 1), Error);
}

TEST_CASE("init") {
  const auto s = init(default_params(4), Vector::Zero(4), 0.5);
  CHECK(s.sigma == 0.5);
  CHECK(s.basis.isIdentity());
  CHECK(s.scales.isOnes());
  CHECK(s.p_sigma.isZero());
  CHECK(s.p_c.isZero());
  CHECK(s.generation == 0);
  try {
    (void)init(default_params(4), Vector::Zero(3), 0.5);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("sampling statistics of the initial state") {
  const double sigma0 = 0.5;
  State s = init(default_params(3, 100), Vector::Zero(3), sigma0);
  Rng rng(42);
  std::vector<Vector> xs;
  while (xs.size() < 10000) {
    for (auto& g : sample(s, rng)) xs.push_back(g);
  }
  Matrix cov = Matrix::Zero(3, 3);
  Vector mean = Vector::Zero(3);
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  for (const auto& x : xs) cov += (x - mean) * (x - mean).transpose();
  cov /= static_cast<double>(xs.size() - 1);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(cov(i, j) - (i == j ? sigma0 * sigma0 : 0.0)) < 0.1 * sigma0 * sigma0);
    }
  }
}

TEST_CASE("standard normal marginals pass Kolmogorov-Smirnov at p > 0.01") {
  State s = init(default_params(4, 100), Vector::Zero(4), 1.0);
  Rng rng(8);
  std::vector<std::vector<double>> coords(4);
  for (int g = 0; g < 100; ++g) {
    for (auto& x : sample(s, rng)) {
      for (int i = 0; i < 4; ++i) coords[static_cast<std::size_t>(i)].push_back(x[i]);
    }
  }
  const double n = 10000;
  const double critical = 1.628 / std::sqrt(n);  // alpha = 0.01
  for (auto& c : coords) {
    std::sort(c.begin(), c.end());
    double d = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double cdf = 0.5 * std::erfc(-c[k] / std::sqrt(2.0));
      d = std::max({d, std::abs(cdf - static_cast<double>(k) / n), std::abs(cdf - static_cast<double>(k + 1) / n)});
    }
    CHECK(d < critical);
  }
}

TEST_CASE("sampling: degenerate sigma and seed determinism") {
  State s = init(default_params(5), Vector::Constant(5, 1.25), 1e-300);
  Rng rng(1);
  for (const auto& g : sample(s, rng)) CHECK((g - s.mean).norm() < 1e-200);

  State a = init(default_params(5), Vector::Zero(5), 1.0);
  State b = a;
  Rng ra(99), rb(99);
  for (int gen = 0; gen < 3; ++gen) {
    const auto ga = sample(a, ra);
    const auto gb = sample(b, rb);
    for (std::size_t k = 0; k < ga.size(); ++k) CHECK(ga[k] == gb[k]);
  }
}

TEST_CASE("update with mu = 1 moves the mean onto the best genome") {
  State s = init(default_params(3, 2), Vector::Zero(3), 1.0);
  REQUIRE(s.params.mu == 1);
  Rng rng(3);
  const auto g = sample(s, rng);
  const std::vector<Vector> ranked = {g[1], g[0]};
  update(s, ranked);
  CHECK(s.mean == g[1]);
}

TEST_CASE("update requires mu ranked genomes") {
  State s = init(default_params(4), Vector::Zero(4), 1.0);
  std::vector<Vector> one = {Vector::Zero(4)};
  try {
    update(s, one);
    FAIL("expected NotEnoughRanked");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEnoughRanked);
  }
}

TEST_CASE("one sphere update from (5,...,5) moves the mean towards the origin") {
  int closer = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    State s = init(default_params(10), Vector::Constant(10, 5.0), 1.0);
    Rng rng(seed);
    const auto g = sample(s, rng);
    std::vector<double> f;
    for (const auto& x : g) f.push_back(x.squaredNorm());
    const double before = s.mean.norm();
    update_from_objectives(s, g, f);
    if (s.mean.norm() < before) ++closer;
  }
  CHECK(closer >= 95);
}

TEST_CASE("covariance stays SPD and the eigen cache stays consistent") {
  CHECK(selftest::min_eigenvalue_over_run(1000, 5) > 0);

  State s = init(default_params(5), Vector::Zero(5), 0.5);
  s.eigen_every_generation = true;
  Rng rng(6);
  for (int gen = 0; gen < 200; ++gen) {
    auto g = sample(s, rng);
    std::vector<double> f;
    for (const auto& x : g) f.push_back(selftest::rosenbrock(x));
    update_from_objectives(s, g, f);
    refresh_eigen(s);
    CHECK((s.cov - s.cov.transpose()).norm() == 0.0);
    const Matrix btb = s.basis.transpose() * s.basis;
    CHECK((btb - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-8);
    const Matrix rebuilt = s.basis * s.scales.cwiseAbs2().asDiagonal() * s.basis.transpose();
    CHECK((rebuilt - s.cov).norm() <= 1e-8 * s.cov.norm());
  }
}

TEST_CASE("rank invariance is bit exact") { CHECK(selftest::rank_invariance(3)); }

TEST_CASE("translation equivariance") {
  const Vector shift = (Vector(4) << 3.0, -2.0, 0.5, 7.0).finished();
  State a = init(default_params(4), Vector::Constant(4, 1.0), 0.3);
  State b = init(default_params(4), Vector::Constant(4, 1.0) + shift, 0.3);
  Rng ra(17), rb(17);
  for (int gen = 0; gen < 40; ++gen) {
    const auto ga = sample(a, ra);
    const auto gb = sample(b, rb);
    std::vector<double> fa, fb;
    for (const auto& x : ga) fa.push_back(selftest::sphere(x));
    for (const auto& x : gb) fb.push_back(selftest::sphere(x - shift));
    update_from_objectives(a, ga, fa);
    update_from_objectives(b, gb, fb);
  }
  CHECK((b.mean - shift - a.mean).norm() < 1e-9);
  CHECK(std::abs(a.sigma - b.sigma) < 1e-9 * a.sigma);
  CHECK((a.cov - b.cov).norm() < 1e-9 * a.cov.norm());
}

TEST_CASE("check_stagnation") {
  State s = init(default_params(4), Vector::Zero(4), 1.0);
  CHECK_FALSE(check_stagnation(s, {}).has_value());

  State ill = s;
  Matrix c = Matrix::Identity(4, 4);
  c(0, 0) = 1e16;
  set_covariance(ill, c);
  CHECK(check_stagnation(ill, {}) == StagnationReason::ConditionCov);

  State tiny = s;
  tiny.sigma = 1e-30;
  CHECK(check_stagnation(tiny, {}) == StagnationReason::TolX);

  State far = s;
  far.mean = Vector::Constant(4, 1e20);
  CHECK(check_stagnation(far, {}) == StagnationReason::NoEffectAxis);

  const int window = stagnation_window(s.params);
  std::vector<double> flat(static_cast<std::size_t>(window), 3.0);
  CHECK_FALSE(check_stagnation(s, flat).has_value());
  flat.push_back(3.0);
  CHECK(check_stagnation(s, flat) == StagnationReason::TolStagnation);
  flat.push_back(2.0);
  CHECK_FALSE(check_stagnation(s, flat).has_value());
}

TEST_CASE("minimize converges on a small sphere") {
  Rng rng(1);
  const auto r = minimize(selftest::sphere, Vector::Ones(10), 0.5, 5000, 1e-10, rng);
  CHECK(r.reached_target);
  CHECK(r.evaluations <= 5000);
}

TEST_CASE("trace rows") {
  State s = init(default_params(2), Vector::Zero(2), 1.0);
  std::ostringstream out;
  write_trace_header(out, true, 2);
  write_trace_row(out, trace_row(s, 4.0), true);
  CHECK(out.str() == "gen,sigma,cond,mean_norm,best_f,eval_count,m0,m1\n0,1,1,0,4,0,0,0\n");
}
