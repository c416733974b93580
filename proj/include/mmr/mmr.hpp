// Copyright 2026 The minimax-regret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMR_MMR_HPP_
#define MMR_MMR_HPP_

#include "mmr/best_response.hpp"
#include "mmr/coarsening.hpp"
#include "mmr/fictitious_play.hpp"
#include "mmr/grid_scan.hpp"
#include "mmr/innovations.hpp"
#include "mmr/io.hpp"
#include "mmr/model.hpp"
#include "mmr/oracles.hpp"
#include "mmr/parallel.hpp"
#include "mmr/prob.hpp"
#include "mmr/two_arm.hpp"

#endif  // MMR_MMR_HPP_
