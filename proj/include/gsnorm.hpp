// Copyright 2026 The gsnorm Authors
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

#ifndef GSNORM_HPP_
#define GSNORM_HPP_

#include "gsnorm/config_io.hpp"
#include "gsnorm/experiments.hpp"
#include "gsnorm/fundamental.hpp"
#include "gsnorm/metrics.hpp"
#include "gsnorm/normal.hpp"
#include "gsnorm/normal_transform.hpp"
#include "gsnorm/parallel.hpp"
#include "gsnorm/psi.hpp"
#include "gsnorm/quadrature.hpp"
#include "gsnorm/random.hpp"
#include "gsnorm/trial.hpp"
#include "gsnorm/verification.hpp"

#endif  // GSNORM_HPP_
