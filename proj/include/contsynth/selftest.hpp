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

#include <functional>
#include <string>
#include <vector>

#include "contsynth/cmaes.hpp"

namespace contsynth::selftest {

double sphere(const cma::Vector& x);
double rosenbrock(const cma::Vector& x);

struct ConvergenceSummary {
  int runs = 0;
  int reached = 0;
  std::vector<double> final_values;
  std::vector<long> evaluations;
  double median_final = 0;
};

/// Seeds 1..runs, one CMA-ES run each with default parameters.
ConvergenceSummary convergence(const std::function<double(const cma::Vector&)>& f,
                               const cma::Vector& m0, double sigma0, long max_evals, double target,
                               int runs);

ConvergenceSummary sphere_10d(int runs = 20);
ConvergenceSummary rosenbrock_5d(int runs = 20);

/// True when two states are identical member by member, bit for bit.
bool bit_identical(const cma::State& a, const cma::State& b);

/// Updates three copies of one state from objectives f, 2f+7 and exp(f);
/// true when all three results are bit-identical.
bool rank_invariance(std::uint64_t seed = 7);

/// Minimum eigenvalue of C over `generations` updates on 5-D Rosenbrock;
/// positive when positive definiteness held throughout.
double min_eigenvalue_over_run(int generations = 1000, std::uint64_t seed = 11);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Everything above with the acceptance thresholds applied.
std::vector<Check> run_all();

}  // namespace contsynth::selftest
