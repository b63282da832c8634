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

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cplab {

constexpr uint64_t low_mask(int count) {
  return count >= 64 ? ~uint64_t{0} : ((uint64_t{1} << count) - 1);
}

inline int parity(uint64_t x) { return std::popcount(x) & 1; }

// Fixed-width bit string. Bit i lives in byte i/8 at position 7 - i%8, so the
// hex form reads left to right.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int num_bits);
  BitString(int num_bits, std::vector<uint8_t> bytes);

  static BitString from_u64(uint64_t value, int num_bits);
  static BitString from_hex(std::string_view hex, int num_bits);

  int size() const { return num_bits_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

  bool get(int i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1; }
  void set(int i, bool v);

  // First min(size, 64) bits as an integer, first bit most significant.
  uint64_t to_u64() const;
  std::string to_hex() const;

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString& other) const = default;

 private:
  int num_bits_ = 0;
  std::vector<uint8_t> bytes_;
};

std::string to_hex(uint64_t value, int num_bits);
uint64_t parse_hex(std::string_view hex);

}  // namespace cplab
