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

#include "contsynth/mapping.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "contsynth/error.hpp"

namespace contsynth {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double u) {
  if (u <= 0) return -std::numeric_limits<double>::infinity();
  if (u >= 1) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

TokenProbabilities TokenProbabilities::from_weights(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorCode::DegenerateProbabilities, "no tokens");
  if (static_cast<double>(n) * kProbabilityFloor > 1.0) {
    throw Error(ErrorCode::DegenerateProbabilities, "floor exceeds 1/|D|");
  }
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw Error(ErrorCode::DegenerateProbabilities, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0)) throw Error(ErrorCode::DegenerateProbabilities, "weights sum to zero");

  std::vector<bool> floored(n, false);
  std::vector<double> p(n);
  while (true) {
    std::size_t n_floored = 0;
    double free_weight = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (floored[i]) ++n_floored;
      else free_weight += weights[i];
    }
    const double free_mass = 1.0 - static_cast<double>(n_floored) * kProbabilityFloor;
    if (free_weight <= 0 || free_mass <= 0) {
      if (n_floored == n && std::abs(free_mass) < 1e-12) {
        std::fill(p.begin(), p.end(), kProbabilityFloor);
        break;
      }
      throw Error(ErrorCode::DegenerateProbabilities, "cannot restore unit mass");
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (floored[i]) {
        p[i] = kProbabilityFloor;
        continue;
      }
      p[i] = weights[i] / free_weight * free_mass;
      if (p[i] < kProbabilityFloor) {
        floored[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  TokenProbabilities out;
  out.p_ = std::move(p);
  return out;
}

TokenProbabilities TokenProbabilities::uniform(std::size_t n) {
  const std::vector<double> w(n, 1.0);
  return from_weights(w);
}

TokenProbabilities TokenProbabilities::parse(std::string_view text, const TokenInventory& inv) {
  std::vector<double> w(inv.size(), 0.0);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::IoError,
                  "probability file line " + std::to_string(line_no) + ": expected name<TAB>p");
    }
    const std::string name = line.substr(0, tab);
    const int idx = inv.find(name);
    if (idx < 0) throw Error(ErrorCode::UnknownToken, name);
    double value = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::IoError,
                  "probability file line " + std::to_string(line_no) + ": bad number");
    }
    w[static_cast<std::size_t>(idx)] = value;
  }
  return from_weights(w);
}

TokenProbabilities TokenProbabilities::load(const std::filesystem::path& path,
                                            const TokenInventory& inv) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), inv);
}

std::string TokenProbabilities::serialize(const TokenInventory& inv) const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < p_.size(); ++i) out << inv[i].name << '\t' << p_[i] << '\n';
  return out.str();
}

std::size_t TokenProbabilities::argmax() const {
  return static_cast<std::size_t>(std::max_element(p_.begin(), p_.end()) - p_.begin());
}

std::size_t BinLayout::locate(double u) const {
  const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end(), u);
  const auto j = static_cast<std::size_t>(it - boundaries.begin()) - 1;
  return std::min(j, bins() - 1);
}

BinLayout build_layout(const TokenProbabilities& p) {
  BinLayout layout;
  layout.boundaries.resize(p.size() + 1);
  layout.boundaries[0] = 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    acc += p[j];
    layout.boundaries[j + 1] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9) {
    throw Error(ErrorCode::DegenerateProbabilities, "probabilities do not sum to 1");
  }
  layout.boundaries.back() = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(layout.boundaries[j + 1] > layout.boundaries[j])) {
      throw Error(ErrorCode::DegenerateProbabilities, "zero-width bin");
    }
  }
  return layout;
}

std::string_view to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::Bin: return "bin";
    case SchemeKind::DynamicBin: return "dynamic-bin";
    case SchemeKind::SingleGroup: return "single-group";
    case SchemeKind::MultiGroup: return "multi-group";
    case SchemeKind::DynamicMultiGroup: return "dynamic-multi-group";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view text) {
  for (auto k : {SchemeKind::Bin, SchemeKind::DynamicBin, SchemeKind::SingleGroup,
                 SchemeKind::MultiGroup, SchemeKind::DynamicMultiGroup}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::ConfigError, "unknown mapping scheme '" + std::string(text) + "'");
}

std::size_t genome_dimension(const MappingScheme& scheme, std::size_t inventory_size) {
  const auto l = static_cast<std::size_t>(scheme.length);
  switch (scheme.kind) {
    case SchemeKind::Bin: return l;
    case SchemeKind::DynamicBin: return l + 1;
    case SchemeKind::SingleGroup: return inventory_size;
    case SchemeKind::MultiGroup: return l * inventory_size;
    case SchemeKind::DynamicMultiGroup: return 1 + l * inventory_size;
  }
  return 0;
}

Program bin_map(std::span<const double> genome, const BinLayout& layout) {
  Program p;
  p.tokens.reserve(genome.size());
  for (double g : genome) p.tokens.push_back(static_cast<std::uint16_t>(layout.locate(normal_cdf(g))));
  return p;
}

namespace {

// Indices of `values` ordered by descending value, ties by ascending index;
// only the first `count` are sorted.
std::vector<std::uint16_t> top_indices(std::span<const double> values, std::size_t count) {
  std::vector<std::uint16_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::uint16_t{0});
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](std::uint16_t a, std::uint16_t b) {
                      return values[a] > values[b] || (values[a] == values[b] && a < b);
                    });
  idx.resize(count);
  return idx;
}

}  // namespace

Program single_group_map(std::span<const double> genome, int length) {
  if (length < 1 || static_cast<std::size_t>(length) > genome.size()) {
    throw Error(ErrorCode::LengthExceedsInventory,
                "length " + std::to_string(length) + " with " + std::to_string(genome.size()) +
                    " tokens");
  }
  return Program{top_indices(genome, static_cast<std::size_t>(length))};
}

Program multi_group_map(std::span<const double> genome, std::size_t inventory_size) {
  if (inventory_size == 0 || genome.size() % inventory_size != 0) {
    throw Error(ErrorCode::DimensionMismatch, "genome is not a whole number of groups");
  }
  Program p;
  for (std::size_t off = 0; off < genome.size(); off += inventory_size) {
    const auto group = genome.subspan(off, inventory_size);
    p.tokens.push_back(
        static_cast<std::uint16_t>(std::max_element(group.begin(), group.end()) - group.begin()));
  }
  return p;
}

std::vector<int> group_count_domain(int length, std::size_t inventory_size) {
  std::vector<int> ks;
  for (int k = 1; k <= length; ++k) {
    if (length % k == 0 && static_cast<std::size_t>(length / k) <= inventory_size) ks.push_back(k);
  }
  return ks;
}

int decode_group_count(double g0, int length, std::size_t inventory_size) {
  const auto ks = group_count_domain(length, inventory_size);
  auto slot = static_cast<std::size_t>(normal_cdf(g0) * static_cast<double>(ks.size()));
  return ks[std::min(slot, ks.size() - 1)];
}

Program dynamic_multi_group_map(std::span<const double> genome, std::size_t inventory_size,
                                int length) {
  const std::size_t expected = 1 + static_cast<std::size_t>(length) * inventory_size;
  if (genome.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "dynamic multi-group genome size");
  }
  const int k = decode_group_count(genome[0], length, inventory_size);
  const auto per_group = static_cast<std::size_t>(length / k);
  Program p;
  p.tokens.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < k; ++i) {
    const auto group = genome.subspan(1 + static_cast<std::size_t>(i) * inventory_size, inventory_size);
    for (auto tok : top_indices(group, per_group)) p.tokens.push_back(tok);
  }
  return p;
}

DecodedCandidates dynamic_bin_map(std::span<const double> genome, const BinLayout& layout) {
  if (genome.size() < 2) throw Error(ErrorCode::DimensionMismatch, "dynamic bin needs l_max + 1");
  const std::size_t l_max = genome.size() - 1;
  const Program full = bin_map(genome.first(l_max), layout);
  DecodedCandidates out;
  out.candidates.reserve(l_max);
  for (std::size_t len = 1; len <= l_max; ++len) out.candidates.push_back(full.prefix(len));
  const auto slot = static_cast<std::size_t>(normal_cdf(genome[l_max]) * static_cast<double>(l_max));
  out.length_hint = static_cast<int>(std::min(slot, l_max - 1)) + 1;
  return out;
}

DecodedCandidates decode(const MappingScheme& scheme, std::span<const double> genome,
                         const BinLayout& layout, std::size_t inventory_size) {
  const std::size_t dim = genome_dimension(scheme, inventory_size);
  if (genome.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "genome has " + std::to_string(genome.size()) +
                                                  " coordinates, scheme needs " + std::to_string(dim));
  }
  switch (scheme.kind) {
    case SchemeKind::Bin: return {{bin_map(genome, layout)}, 0};
    case SchemeKind::DynamicBin: return dynamic_bin_map(genome, layout);
    case SchemeKind::SingleGroup: return {{single_group_map(genome, scheme.length)}, 0};
    case SchemeKind::MultiGroup: return {{multi_group_map(genome, inventory_size)}, 0};
    case SchemeKind::DynamicMultiGroup:
      return {{dynamic_multi_group_map(genome, inventory_size, scheme.length)}, 0};
  }
  return {};
}

}  // namespace contsynth
