// Copyright 2026 The dphc Authors.
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

#ifndef DPHC_DPHC_HPP_
#define DPHC_DPHC_HPP_

#include "dphc/algorithms.hpp"
#include "dphc/cuts.hpp"
#include "dphc/error.hpp"
#include "dphc/experiment.hpp"
#include "dphc/generators.hpp"
#include "dphc/graph.hpp"
#include "dphc/graph_io.hpp"
#include "dphc/hctree.hpp"
#include "dphc/mechanisms.hpp"
#include "dphc/reduction.hpp"
#include "dphc/rng.hpp"
#include "dphc/tree_search.hpp"
#include "dphc/verify.hpp"

#endif  // DPHC_DPHC_HPP_
