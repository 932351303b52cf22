// Copyright 2026 The clonereg Authors
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


// Umbrella header for the clonereg library.

#ifndef CLONEREG_CLONEREG_HPP
#define CLONEREG_CLONEREG_HPP

#include "clonereg/channels.hpp"
#include "clonereg/choi_io.hpp"
#include "clonereg/cloning.hpp"
#include "clonereg/oracle.hpp"
#include "clonereg/parallel.hpp"
#include "clonereg/region.hpp"
#include "clonereg/tensor_core.hpp"

#endif  // CLONEREG_CLONEREG_HPP
