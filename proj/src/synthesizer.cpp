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

#include "contsynth/synthesizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "contsynth/error.hpp"

namespace contsynth {

std::string_view to_string(BinType b) { return b == BinType::Uniform ? "uniform" : "biased"; }
std::string_view to_string(GeneInit g) { return g == GeneInit::Normal ? "normal" : "learned"; }
std::string_view to_string(CheckMode c) { return c == CheckMode::Full ? "full" : "sub"; }

BinType parse_bin_type(std::string_view text) {
  if (text == "uniform") return BinType::Uniform;
  if (text == "biased") return BinType::Biased;
  throw Error(ErrorCode::ConfigError, "bins must be uniform or biased, got '" + std::string(text) + "'");
}

GeneInit parse_gene_init(std::string_view text) {
  if (text == "normal") return GeneInit::Normal;
  if (text == "learned") return GeneInit::Learned;
  throw Error(ErrorCode::ConfigError, "init must be normal or learned, got '" + std::string(text) + "'");
}

CheckMode parse_check_mode(std::string_view text) {
  if (text == "full") return CheckMode::Full;
  if (text == "sub") return CheckMode::Sub;
  throw Error(ErrorCode::ConfigError, "check must be full or sub, got '" + std::string(text) + "'");
}

SynthesisConfig SynthesisConfig::best_setup(int length) {
  SynthesisConfig c;
  c.length = length;
  return c;
}

void apply_policy_name(SynthesisConfig& config, std::string_view name) {
  if (name == "none") {
    config.restart_enabled = false;
    config.policy = {};
    return;
  }
  config.restart_enabled = true;
  config.policy = parse_restart_policy(name);
}

std::string policy_name(const SynthesisConfig& config) {
  return config.restart_enabled ? to_string(config.policy) : "none";
}

nlohmann::json config_to_json(const SynthesisConfig& c) {
  return {
      {"length", c.length},
      {"scheme", to_string(c.scheme)},
      {"metric", to_string(c.metric)},
      {"policy", policy_name(c)},
      {"bins", to_string(c.bins)},
      {"init", to_string(c.gene_init)},
      {"check", to_string(c.check)},
      {"budget", c.time_budget},
      {"max_evals", c.max_evaluations},
      {"seed", c.seed},
      {"sigma0", c.sigma0},
      {"lambda", c.lambda},
      {"max_lambda", c.max_lambda},
      {"anchor_end_bins", c.anchor_end_bins},
  };
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Solved: return "Solved";
    case StopReason::Timeout: return "Timeout";
    case StopReason::Stagnated: return "Stagnated";
  }
  return "?";
}

nlohmann::json result_to_json(const SynthesisResult& r, const SynthesisConfig& config,
                              const TokenInventory& inv) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& rec : r.restart_log) {
    log.push_back({{"generation", rec.generation},
                   {"reason", to_string(rec.reason)},
                   {"lambda_after", rec.lambda_after},
                   {"programs_explored", rec.programs_explored}});
  }
  return {
      {"found", r.found ? nlohmann::json(format_program(*r.found, inv)) : nlohmann::json(nullptr)},
      {"stop_reason", to_string(r.stop_reason)},
      {"wall_time", r.wall_time},
      {"generations", r.generations},
      {"restarts", r.restarts},
      {"programs_explored", r.programs_explored},
      {"restart_log", std::move(log)},
      {"config", config_to_json(config)},
  };
}

CandidateOutcome evaluate_candidates(const TokenInventory& inv, std::span<const Program> programs,
                                     const Specification& spec, CheckMode mode, Metric metric) {
  CandidateOutcome out;
  out.best_error = std::numeric_limits<long>::max();
  auto test = [&](const Program& p) {
    ++out.checked;
    const long e = error_total(inv, p, spec, metric);
    out.best_error = std::min(out.best_error, e);
    if (e == 0 && !out.solution) out.solution = p;
  };

  if (mode == CheckMode::Full) {
    for (const auto& p : programs) test(p);
    return out;
  }
  std::vector<Program> seen;
  for (const auto& p : programs) {
    for (std::size_t len = 1; len <= p.size(); ++len) {
      Program prefix = p.prefix(len);
      if (std::find(seen.begin(), seen.end(), prefix) != seen.end()) continue;
      test(prefix);
      seen.push_back(std::move(prefix));
    }
  }
  return out;
}

std::optional<Program> check_candidates(const TokenInventory& inv,
                                        std::span<const Program> programs,
                                        const Specification& spec, CheckMode mode,
                                        long& programs_explored) {
  auto outcome = evaluate_candidates(inv, programs, spec, mode, Metric::Edit);
  programs_explored += outcome.checked;
  return std::move(outcome.solution);
}

namespace {

cma::Vector standardized(const TokenProbabilities& probs) {
  const auto n = static_cast<Eigen::Index>(probs.size());
  cma::Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = probs[static_cast<std::size_t>(i)];
  v.array() -= v.mean();
  const double sd = std::sqrt(v.squaredNorm() / static_cast<double>(n));
  if (sd > 0) v /= sd;
  return v;
}

struct Span {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  double excess(double g) const { return std::max(0.0, g - hi) + std::max(0.0, lo - g); }
};

Span equal_bins_span(std::size_t bins) {
  if (bins < 2) return {};
  const double edge = normal_quantile(0.5 / static_cast<double>(bins));
  return {edge, -edge};
}

}  // namespace

double end_bin_penalty(const MappingScheme& scheme, std::span<const double> genome,
                       const BinLayout& layout, std::size_t inventory_size) {
  double excess = 0;
  switch (scheme.kind) {
    case SchemeKind::Bin:
    case SchemeKind::DynamicBin: {
      const auto& b = layout.boundaries;
      const Span tokens{normal_quantile(0.5 * (b[0] + b[1])),
                        normal_quantile(0.5 * (b[b.size() - 2] + b.back()))};
      const std::size_t l = scheme.kind == SchemeKind::Bin ? genome.size() : genome.size() - 1;
      for (std::size_t i = 0; i < l; ++i) excess += tokens.excess(genome[i]);
      if (scheme.kind == SchemeKind::DynamicBin) excess += equal_bins_span(l).excess(genome[l]);
      break;
    }
    case SchemeKind::DynamicMultiGroup: {
      const auto ks = group_count_domain(scheme.length, inventory_size);
      excess += equal_bins_span(ks.size()).excess(genome[0]);
      break;
    }
    default: break;
  }
  return 0.5 * excess / (1.0 + excess);
}

cma::Vector initialize_genes(const SynthesisConfig& config, std::size_t inventory_size,
                             const BinLayout& layout, const TokenProbabilities* probs) {
  const auto scheme = config.mapping();
  const auto dim = static_cast<Eigen::Index>(genome_dimension(scheme, inventory_size));
  cma::Vector m = cma::Vector::Zero(dim);
  if (config.gene_init == GeneInit::Normal) return m;
  if (probs == nullptr) throw Error(ErrorCode::MissingProbabilities, "learned init needs token probabilities");
  if (probs->size() != inventory_size) {
    throw Error(ErrorCode::ConfigError, "probabilities do not match the inventory");
  }

  const auto d = static_cast<Eigen::Index>(inventory_size);
  switch (scheme.kind) {
    case SchemeKind::Bin:
    case SchemeKind::DynamicBin: {
      const std::size_t j = probs->argmax();
      const double mid = 0.5 * (layout.boundaries[j] + layout.boundaries[j + 1]);
      m.head(config.length).setConstant(normal_quantile(mid));
      break;
    }
    case SchemeKind::SingleGroup: m = standardized(*probs); break;
    case SchemeKind::MultiGroup: {
      const cma::Vector z = standardized(*probs);
      for (int i = 0; i < config.length; ++i) m.segment(i * d, d) = z;
      break;
    }
    case SchemeKind::DynamicMultiGroup: {
      const cma::Vector z = standardized(*probs);
      for (int i = 0; i < config.length; ++i) m.segment(1 + i * d, d) = z;
      break;
    }
  }
  return m;
}

SynthesisResult synthesize(const TokenInventory& inv, const Specification& spec,
                           const SynthesisConfig& config, const TokenProbabilities* probs,
                           std::ostream* trace, bool trace_mean) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  if (spec.examples.empty()) throw Error(ErrorCode::ConfigError, "empty specification");
  if (config.length < 1) throw Error(ErrorCode::ConfigError, "length must be >= 1");
  if (config.scheme == SchemeKind::SingleGroup &&
      static_cast<std::size_t>(config.length) > inv.size()) {
    throw Error(ErrorCode::ConfigError, "single-group mapping needs length <= inventory size");
  }
  if (probs != nullptr && probs->size() != inv.size()) {
    throw Error(ErrorCode::ConfigError, "probabilities do not match the inventory");
  }
  if (config.bins == BinType::Biased && probs == nullptr) {
    throw Error(ErrorCode::MissingProbabilities, "biased bins need token probabilities");
  }
  if (!(config.sigma0 > 0)) throw Error(ErrorCode::ConfigError, "sigma0 must be positive");

  const BinLayout layout = config.bins == BinType::Biased
                               ? build_layout(*probs)
                               : build_layout(TokenProbabilities::uniform(inv.size()));
  const MappingScheme scheme = config.mapping();
  const auto dim = static_cast<int>(genome_dimension(scheme, inv.size()));

  cma::Rng rng(config.seed);
  int lambda = config.lambda;
  if (lambda > 0) lambda = std::min(lambda, config.max_lambda);
  cma::State state = cma::init(cma::default_params(dim, lambda),
                               initialize_genes(config, inv.size(), layout, probs), config.sigma0);
  state.eigen_every_generation = config.eigen_every_generation;

  RestartBudget budget{.max_lambda = std::max(config.max_lambda, state.params.lambda)};
  const RestartInit restart_init{.sigma0 = config.sigma0};

  if (trace != nullptr) cma::write_trace_header(*trace, trace_mean, dim);

  SynthesisResult result;
  std::vector<double> best_history;
  std::vector<CandidateOutcome> outcomes;
  std::vector<double> objectives;

  while (true) {
    if (elapsed() >= config.time_budget ||
        (config.max_evaluations > 0 && result.programs_explored >= config.max_evaluations)) {
      result.stop_reason = StopReason::Timeout;
      break;
    }

    const auto genomes = cma::sample(state, rng);
    const std::size_t count = genomes.size();
    outcomes.assign(count, {});
    auto evaluate = [&](std::size_t k) {
      const auto& g = genomes[k];
      const auto decoded = decode(scheme, {g.data(), static_cast<std::size_t>(g.size())}, layout, inv.size());
      outcomes[k] = evaluate_candidates(inv, decoded.candidates, spec, config.check, config.metric);
    };
    const auto workers = static_cast<std::size_t>(std::max(1, config.eval_threads));
    if (workers == 1) {
      for (std::size_t k = 0; k < count; ++k) evaluate(k);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t k = t; k < count; k += workers) evaluate(k);
        });
      }
    }

    ++result.generations;
    state.eval_count += static_cast<long>(count);
    objectives.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      result.programs_explored += outcomes[k].checked;
      objectives[k] = static_cast<double>(outcomes[k].best_error);
      if (config.anchor_end_bins) {
        const auto& g = genomes[k];
        objectives[k] += end_bin_penalty(scheme, {g.data(), static_cast<std::size_t>(g.size())},
                                         layout, inv.size());
      }
    }
    const auto solved = std::find_if(outcomes.begin(), outcomes.end(),
                                     [](const CandidateOutcome& o) { return o.solution.has_value(); });
    double gen_best = std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) gen_best = std::min(gen_best, static_cast<double>(o.best_error));
    if (solved != outcomes.end()) {
      result.found = solved->solution;
      result.stop_reason = StopReason::Solved;
      if (trace != nullptr) cma::write_trace_row(*trace, cma::trace_row(state, gen_best), trace_mean);
      break;
    }
    best_history.push_back(gen_best);

    if (const auto reason = cma::check_stagnation(state, best_history)) {
      if (!config.restart_enabled) {
        result.stop_reason = StopReason::Stagnated;
        break;
      }
      try {
        state = apply_restart(config.policy, state, budget, restart_init, rng);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExhausted) throw;
        RestartPolicy capped = config.policy;
        capped.pb = false;
        state = apply_restart(capped, state, budget, restart_init, rng);
      }
      result.restart_log.push_back(
          {result.generations, *reason, state.params.lambda, result.programs_explored});
      best_history.clear();
    } else {
      cma::update_from_objectives(state, genomes, objectives);
    }
    if (trace != nullptr) cma::write_trace_row(*trace, cma::trace_row(state, gen_best), trace_mean);
  }

  result.restarts = budget.restart_count;
  result.wall_time = elapsed();
  return result;
}

}  // namespace contsynth
