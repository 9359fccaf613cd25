// Copyright 2026 The totalcoh developers
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

#include "totalcoh/asymptotic.hpp"
#include "totalcoh/coherence.hpp"
#include "totalcoh/convertibility.hpp"
#include "totalcoh/correlation.hpp"
#include "totalcoh/fuzz.hpp"
#include "totalcoh/io.hpp"
#include "totalcoh/linalg.hpp"
#include "totalcoh/random.hpp"
#include "totalcoh/rng.hpp"
#include "totalcoh/tensor_power.hpp"
