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

#include "contsynth/restart.hpp"

#include <algorithm>
#include <random>

#include "contsynth/error.hpp"

namespace contsynth {

RestartPolicy parse_restart_policy(std::string_view text) {
  RestartPolicy p;
  if (text == "none") return p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('+', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto part = text.substr(pos, end - pos);
    bool* flag = part == "PB" ? &p.pb : part == "MB" ? &p.mb : part == "CB" ? &p.cb : nullptr;
    if (flag == nullptr || *flag) {
      throw Error(ErrorCode::ConfigError, "bad restart policy '" + std::string(text) + "'");
    }
    *flag = true;
    pos = end + 1;
  }
  return p;
}

std::string to_string(const RestartPolicy& p) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += '+';
    out += name;
  };
  add(p.pb, "PB");
  add(p.mb, "MB");
  add(p.cb, "CB");
  return out.empty() ? "none" : out;
}

cma::State apply_restart(const RestartPolicy& policy, const cma::State& state,
                         RestartBudget& budget, const RestartInit& init, cma::Rng& rng) {
  cma::State next = state;
  const int n = state.params.n;

  if (policy.pb) {
    if (state.params.lambda >= budget.max_lambda) {
      throw Error(ErrorCode::BudgetExhausted,
                  "population already at cap " + std::to_string(budget.max_lambda));
    }
    const int lambda = std::min(2 * state.params.lambda, budget.max_lambda);
    next.params = cma::default_params(n, lambda);
  }
  if (policy.mb) {
    std::uniform_real_distribution<double> uniform(init.mean_low, init.mean_high);
    for (int i = 0; i < n; ++i) next.mean[i] = uniform(rng);
  }
  if (policy.cb) {
    next.cov = cma::Matrix::Identity(n, n);
    next.p_sigma = cma::Vector::Zero(n);
    next.p_c = cma::Vector::Zero(n);
    next.basis = cma::Matrix::Identity(n, n);
    next.scales = cma::Vector::Ones(n);
    next.eigen_dirty = false;
    next.eigen_generation = state.generation;
  }
  next.sigma = init.sigma0;
  next.sigma0 = init.sigma0;
  ++budget.restart_count;
  return next;
}

}  // namespace contsynth
