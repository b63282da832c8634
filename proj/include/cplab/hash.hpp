// Copyright 2026 The cplab Authors
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
#include <cstdint>
#include <span>

namespace cplab {

using Digest = std::array<uint8_t, 32>;

// SHA-256 of the concatenation of the given parts.
Digest sha256(std::span<const uint8_t> data);
Digest sha256(std::span<const uint8_t> a, std::span<const uint8_t> b);

}  // namespace cplab
