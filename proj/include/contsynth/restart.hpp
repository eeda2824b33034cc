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

#include <string>
#include <string_view>

#include "contsynth/cmaes.hpp"

namespace contsynth {

/// Which state components a restart resets: population doubling (PB), mean
/// re-randomization (MB), covariance reset (CB).
struct RestartPolicy {
  bool pb = false;
  bool mb = false;
  bool cb = false;

  friend bool operator==(const RestartPolicy&, const RestartPolicy&) = default;
};

/// Accepts "PB", "MB", "CB" joined by '+' in any order, or "none" (all
/// flags clear). The engine-level no-restart switch lives in the
/// synthesis config.
RestartPolicy parse_restart_policy(std::string_view text);
std::string to_string(const RestartPolicy& p);

inline constexpr int kDefaultMaxLambda = 4096;

struct RestartBudget {
  int max_lambda = kDefaultMaxLambda;
  int restart_count = 0;
};

/// What a restart resets to.
struct RestartInit {
  double sigma0 = 1.0;
  double mean_low = -2.0;
  double mean_high = 2.0;
};

/// Returns the restarted state. Sigma always returns to sigma0; otherwise
/// only the flagged components change. Throws BudgetExhausted if PB is set
/// and lambda is already at the cap.
cma::State apply_restart(const RestartPolicy& policy, const cma::State& state,
                         RestartBudget& budget, const RestartInit& init, cma::Rng& rng);

}  // namespace contsynth
