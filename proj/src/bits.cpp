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

#include "cplab/bits.hpp"

#include <stdexcept>

#include "cplab/errors.hpp"

namespace cplab {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(int num_bits)
    : num_bits_(num_bits), bytes_((num_bits + 7) / 8, 0) {
  if (num_bits < 0) throw ParameterError("negative bit length");
}

BitString::BitString(int num_bits, std::vector<uint8_t> bytes)
    : num_bits_(num_bits), bytes_(std::move(bytes)) {
  if (static_cast<int>(bytes_.size()) != (num_bits + 7) / 8) {
    throw DimensionMismatch("byte count does not match bit length");
  }
  if (num_bits % 8 != 0) {
    bytes_.back() &= static_cast<uint8_t>(0xff << (8 - num_bits % 8));
  }
}

BitString BitString::from_u64(uint64_t value, int num_bits) {
  if (num_bits > 64) throw ParameterError("from_u64 supports at most 64 bits");
  BitString out(num_bits);
  for (int i = 0; i < num_bits; ++i) {
    out.set(i, (value >> (num_bits - 1 - i)) & 1);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, int num_bits) {
  BitString out(num_bits);
  int nibbles = static_cast<int>(hex.size());
  if (nibbles * 4 < num_bits || (nibbles - 1) * 4 >= num_bits + 3) {
    throw DimensionMismatch("hex length does not match bit length");
  }
  for (int k = 0; k < nibbles; ++k) {
    int v = hex_digit(hex[k]);
    if (v < 0) throw ParameterError("invalid hex digit");
    for (int j = 0; j < 4; ++j) {
      int i = 4 * k + j;
      bool bit = (v >> (3 - j)) & 1;
      if (i < num_bits) {
        out.set(i, bit);
      } else if (bit) {
        throw DimensionMismatch("hex value has bits beyond the declared length");
      }
    }
  }
  return out;
}

void BitString::set(int i, bool v) {
  uint8_t m = static_cast<uint8_t>(1u << (7 - i % 8));
  if (v) {
    bytes_[i / 8] |= m;
  } else {
    bytes_[i / 8] &= static_cast<uint8_t>(~m);
  }
}

uint64_t BitString::to_u64() const {
  uint64_t v = 0;
  int n = num_bits_ < 64 ? num_bits_ : 64;
  for (int i = 0; i < n; ++i) v = (v << 1) | static_cast<uint64_t>(get(i));
  return v;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  int nibbles = (num_bits_ + 3) / 4;
  for (int k = 0; k < nibbles; ++k) {
    int v = 0;
    for (int j = 0; j < 4; ++j) {
      int i = 4 * k + j;
      v = (v << 1) | (i < num_bits_ ? static_cast<int>(get(i)) : 0);
    }
    out.push_back(digits[v]);
  }
  return out;
}

BitString BitString::operator^(const BitString& other) const {
  if (other.num_bits_ != num_bits_) throw DimensionMismatch("xor of unequal widths");
  BitString out = *this;
  for (size_t k = 0; k < bytes_.size(); ++k) out.bytes_[k] ^= other.bytes_[k];
  return out;
}

std::string to_hex(uint64_t value, int num_bits) {
  static const char* digits = "0123456789abcdef";
  int nibbles = num_bits <= 0 ? 1 : (num_bits + 3) / 4;
  std::string out(nibbles, '0');
  for (int k = nibbles - 1; k >= 0; --k) {
    out[k] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

uint64_t parse_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 16) throw ParameterError("hex value must have 1 to 16 digits");
  uint64_t v = 0;
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw ParameterError("invalid hex digit");
    v = (v << 4) | static_cast<uint64_t>(d);
  }
  return v;
}

}  // namespace cplab
