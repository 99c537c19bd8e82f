// Copyright 2026 The softcover Authors
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

#ifndef SOFTCOVER_SOFTCOVER_HPP
#define SOFTCOVER_SOFTCOVER_HPP

#include "softcover/codebook.hpp"
#include "softcover/cq_source.hpp"
#include "softcover/divergences.hpp"
#include "softcover/errors.hpp"
#include "softcover/exponents.hpp"
#include "softcover/info.hpp"
#include "softcover/linalg.hpp"
#include "softcover/model_io.hpp"
#include "softcover/report.hpp"
#include "softcover/theta.hpp"
#include "softcover/types.hpp"
#include "softcover/verify.hpp"

#endif  // SOFTCOVER_SOFTCOVER_HPP
