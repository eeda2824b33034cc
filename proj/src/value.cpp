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

#include "contsynth/value.hpp"

#include <algorithm>

namespace contsynth {

bool Value::well_formed() const {
  switch (kind_) {
    case Kind::Int: return in_range(scalar_);
    case Kind::List:
      return items_.size() <= kMaxListLength &&
             std::all_of(items_.begin(), items_.end(), [](int v) { return in_range(v); });
    default: return true;
  }
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(scalar_);
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(items_[i]);
      }
      return out + "]";
    }
    default: return "null";
  }
}

}  // namespace contsynth
