// Copyright 2026 The Deskbench Authors
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

#include <cstdint>
#include <string>
#include <string_view>

#include "deskbench/model.h"

namespace deskbench {

// Lower-case hex SHA-256.
std::string Sha256Hex(const Bytes& data);
std::string Sha256Hex(std::string_view data);

std::string Base64Encode(const Bytes& data);

// Stable 64-bit seed for one task of a run, independent of scheduling.
std::uint64_t TaskSeed(std::uint64_t run_seed, std::string_view task_id);

}  // namespace deskbench
