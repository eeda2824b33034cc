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

#include "contsynth/interpreter.hpp"

#include <algorithm>

namespace contsynth {
namespace {

// Mutable pipeline register. Tokens rewrite it in place so a whole program
// run costs one list copy.
struct Register {
  Value::Kind kind = Value::Kind::Null;
  int scalar = 0;
  std::vector<int> items;

  void set_null() { kind = Value::Kind::Null; }
  void set_int(long long v) {
    if (!in_range(v)) {
      kind = Value::Kind::Null;
      return;
    }
    kind = Value::Kind::Int;
    scalar = static_cast<int>(v);
  }
};

bool holds(Op pred, int x) {
  switch (pred) {
    case Op::Positive: return x > 0;
    case Op::Negative: return x < 0;
    case Op::Even: return x % 2 == 0;
    case Op::Odd: return x % 2 != 0;
    default: return false;
  }
}

long long combine(Op op, long long a, long long b) {
  switch (op) {
    case Op::Plus: return a + b;
    case Op::Minus: return a - b;
    case Op::Times: return a * b;
    case Op::Min: return std::min(a, b);
    case Op::Max: return std::max(a, b);
    default: return a;
  }
}

long long unary(const Token& t, long long x) {
  switch (t.op) {
    case Op::Add: return x + t.arg;
    case Op::Mul: return x * t.arg;
    case Op::Div: return x / t.arg;  // truncates toward zero
    case Op::Square: return x * x;
    default: return x;
  }
}

void step(const Token& t, Register& r) {
  if (r.kind == Value::Kind::Null) return;
  if (r.kind == Value::Kind::Int) {
    r.items.assign(1, r.scalar);
    r.kind = Value::Kind::List;
  }
  auto& xs = r.items;

  switch (t.kind) {
    case TokenKind::FirstOrder:
      switch (t.op) {
        case Op::Head:
          if (xs.empty()) r.set_null();
          else r.set_int(xs.front());
          return;
        case Op::Last:
          if (xs.empty()) r.set_null();
          else r.set_int(xs.back());
          return;
        case Op::Reverse: std::reverse(xs.begin(), xs.end()); return;
        case Op::Sort: std::sort(xs.begin(), xs.end()); return;
        case Op::Sum: {
          long long acc = 0;
          for (int x : xs) acc += x;
          r.set_int(acc);
          return;
        }
        case Op::Minimum:
          if (xs.empty()) r.set_null();
          else r.set_int(*std::min_element(xs.begin(), xs.end()));
          return;
        case Op::Maximum:
          if (xs.empty()) r.set_null();
          else r.set_int(*std::max_element(xs.begin(), xs.end()));
          return;
        case Op::Take:
          if (xs.size() > static_cast<std::size_t>(t.arg)) xs.resize(static_cast<std::size_t>(t.arg));
          return;
        case Op::Drop:
          xs.erase(xs.begin(), xs.begin() + std::min<std::ptrdiff_t>(t.arg, std::ssize(xs)));
          return;
        default: r.set_null(); return;
      }
    case TokenKind::Map:
      for (int& x : xs) {
        const long long y = unary(t, x);
        if (!in_range(y)) {
          r.set_null();
          return;
        }
        x = static_cast<int>(y);
      }
      return;
    case TokenKind::Filter:
      std::erase_if(xs, [&](int x) { return !holds(t.op, x); });
      return;
    case TokenKind::Count:
      r.set_int(std::count_if(xs.begin(), xs.end(), [&](int x) { return holds(t.op, x); }));
      return;
    case TokenKind::ScanL1:
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const long long y = combine(t.op, xs[i - 1], xs[i]);
        if (!in_range(y)) {
          r.set_null();
          return;
        }
        xs[i] = static_cast<int>(y);
      }
      return;
    case TokenKind::ZipWith:
      for (int& x : xs) {
        const long long y = combine(t.op, x, x);
        if (!in_range(y)) {
          r.set_null();
          return;
        }
        x = static_cast<int>(y);
      }
      return;
  }
}

Register load(const Value& v) {
  Register r;
  r.kind = v.kind();
  if (v.is_int()) r.scalar = v.as_int();
  if (v.is_list()) r.items = v.as_list();
  return r;
}

Value store(Register&& r) {
  switch (r.kind) {
    case Value::Kind::Int: return Value::integer(r.scalar);
    case Value::Kind::List: return Value::list(std::move(r.items));
    default: return Value::null();
  }
}

}  // namespace

Value token_semantics(const Token& t, const Value& v) {
  Register r = load(v);
  step(t, r);
  return store(std::move(r));
}

Value execute(const TokenInventory& inv, const Program& p, const Value& input) {
  Register r = load(input);
  for (auto idx : p.tokens) {
    if (r.kind == Value::Kind::Null) break;
    step(inv[idx], r);
  }
  return store(std::move(r));
}

}  // namespace contsynth
