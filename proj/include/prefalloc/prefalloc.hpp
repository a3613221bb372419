// Copyright 2026 The Authors.
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

#ifndef PREFALLOC_PREFALLOC_HPP_
#define PREFALLOC_PREFALLOC_HPP_

#include "prefalloc/core.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/matching.hpp"
#include "prefalloc/min_cost_flow.hpp"
#include "prefalloc/numeric.hpp"
#include "prefalloc/random.hpp"
#include "prefalloc/solvers.hpp"

#endif  // PREFALLOC_PREFALLOC_HPP_
