// Copyright 2026 The laprmt Authors.
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


#ifndef LAPRMT_LAPRMT_HPP_
#define LAPRMT_LAPRMT_HPP_

#include "laprmt/domain.hpp"
#include "laprmt/dynamics.hpp"
#include "laprmt/eigensolver.hpp"
#include "laprmt/ensemble.hpp"
#include "laprmt/error.hpp"
#include "laprmt/freeconv.hpp"
#include "laprmt/graphs.hpp"
#include "laprmt/locallaw.hpp"
#include "laprmt/matrix_io.hpp"
#include "laprmt/parallel.hpp"
#include "laprmt/report.hpp"
#include "laprmt/rng.hpp"
#include "laprmt/special.hpp"
#include "laprmt/spectra.hpp"
#include "laprmt/universality.hpp"

#endif  // LAPRMT_LAPRMT_HPP_
