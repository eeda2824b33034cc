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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "contsynth/value.hpp"

namespace contsynth {

enum class TokenKind : std::uint8_t { FirstOrder, Map, Filter, Count, ScanL1, ZipWith };

std::string_view to_string(TokenKind kind);
TokenKind parse_token_kind(std::string_view text);

/// Compiled operation behind a token. First-order tokens use the list
/// operations; Map uses the unary lambdas; Filter/Count use the
/// predicates; ScanL1/ZipWith use the binary operators.
enum class Op : std::uint8_t {
  Head, Last, Reverse, Sort, Sum, Minimum, Maximum, Take, Drop,
  Add, Mul, Div, Square,
  Positive, Negative, Even, Odd,
  Plus, Minus, Times, Min, Max,
};

struct Token {
  int id = 0;            // 1-based, dense
  std::string name;      // display / program-text spelling
  TokenKind kind = TokenKind::FirstOrder;
  std::string param;     // inventory-file parameter, e.g. "take:2", "+1", "even"
  Op op = Op::Head;
  int arg = 0;           // Take/Drop count, Map constant
};

/// Builds a token from its inventory-file fields. Throws BadInventory on an
/// unknown kind/param combination.
Token make_token(int id, std::string name, TokenKind kind, std::string param);

class TokenInventory {
public:
  TokenInventory() = default;
  explicit TokenInventory(std::vector<Token> tokens);

  /// The canonical 41-token list DSL.
  static TokenInventory standard();
  /// Sub-inventory of `base` restricted to `names`, renumbered densely.
  static TokenInventory subset(const TokenInventory& base, std::span<const std::string> names);

  static TokenInventory load(const std::filesystem::path& path);
  static TokenInventory parse(std::string_view text);
  std::string serialize() const;

  std::size_t size() const noexcept { return tokens_.size(); }
  const Token& operator[](std::size_t index) const { return tokens_[index]; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }

  /// Zero-based index of `name`, or -1.
  int find(std::string_view name) const;

private:
  std::vector<Token> tokens_;
  std::unordered_map<std::string, int> by_name_;
};

/// Ordered token sequence. Entries are zero-based inventory indices.
struct Program {
  std::vector<std::uint16_t> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  Program prefix(std::size_t n) const {
    return Program{{tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(n)}};
  }

  friend bool operator==(const Program&, const Program&) = default;
  friend auto operator<=>(const Program&, const Program&) = default;
};

Program parse_program(std::string_view text, const TokenInventory& inv);
std::string format_program(const Program& p, const TokenInventory& inv);

}  // namespace contsynth
