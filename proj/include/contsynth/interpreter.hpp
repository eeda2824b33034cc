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

#include "contsynth/dsl.hpp"
#include "contsynth/value.hpp"

namespace contsynth {

/// One pipeline step. Total: Null maps to Null, an Int reaching a
/// list-expecting token is promoted to a singleton list, and domain
/// violations yield Null.
Value token_semantics(const Token& t, const Value& v);

/// Runs the tokens of `p` left to right over `input`. Pure and
/// deterministic; never throws.
Value execute(const TokenInventory& inv, const Program& p, const Value& input);

}  // namespace contsynth
