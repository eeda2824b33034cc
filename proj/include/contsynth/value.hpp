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
#include <string>
#include <vector>

namespace contsynth {

inline constexpr int kMinInt = -256;
inline constexpr int kMaxInt = 255;
inline constexpr std::size_t kMaxListLength = 20;

constexpr bool in_range(long long v) { return v >= kMinInt && v <= kMaxInt; }

/// Runtime datum of the list DSL: an integer, a list of integers, or the
/// absorbing Null produced by domain violations.
class Value {
public:
  enum class Kind : std::uint8_t { Null, Int, List };

  Value() = default;

  static Value null() { return Value{}; }
  static Value integer(int v) {
    Value out;
    out.kind_ = Kind::Int;
    out.scalar_ = v;
    return out;
  }
  static Value list(std::vector<int> xs) {
    Value out;
    out.kind_ = Kind::List;
    out.items_ = std::move(xs);
    return out;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_null() const noexcept { return kind_ == Kind::Null; }
  bool is_int() const noexcept { return kind_ == Kind::Int; }
  bool is_list() const noexcept { return kind_ == Kind::List; }

  int as_int() const noexcept { return scalar_; }
  const std::vector<int>& as_list() const noexcept { return items_; }

  /// Length as a sequence: Int counts as one element, Null as zero.
  std::size_t length() const noexcept {
    switch (kind_) {
      case Kind::Int: return 1;
      case Kind::List: return items_.size();
      default: return 0;
    }
  }

  /// True when every integer lies in the DSL range and lists respect the
  /// length cap.
  bool well_formed() const;

  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Int: return a.scalar_ == b.scalar_;
      case Kind::List: return a.items_ == b.items_;
      default: return true;
    }
  }

  std::string to_string() const;

private:
  Kind kind_ = Kind::Null;
  int scalar_ = 0;
  std::vector<int> items_;
};

}  // namespace contsynth
