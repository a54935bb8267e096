// Copyright 2026 The qomech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>

#include "qomech/params.hpp"

namespace qomech {

/// Eigenvalue-based stability of a 6x6 drift matrix.
struct StabilityVerdict {
  std::array<Complex, 6> eigenvalues{};
  double max_real_part = 0.0;
  bool stable = false;
  double margin = 0.0;  // -max_real_part
};

}  // namespace qomech
