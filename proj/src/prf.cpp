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

#include "cplab/prf.hpp"

#include <algorithm>
#include <charconv>

#include "cplab/errors.hpp"
#include "cplab/hash.hpp"

namespace cplab::prf {
namespace {

void check_shape(int input_bits, int output_bits) {
  if (input_bits < 1 || input_bits > kMaxInputBits) {
    throw ParameterError("puncturable-prf: input bits must be in [1, 48]");
  }
  if (output_bits < 1 || output_bits > kMaxOutputBits) {
    throw ParameterError("puncturable-prf: output bits must be in [1, 1024]");
  }
}

void check_input(int input_bits, uint64_t x) {
  if (x >> input_bits) throw DimensionMismatch("PRF input wider than the key's input length");
}

std::string bytes_hex(const Seed& s) {
  BitString b(static_cast<int>(s.size()) * 8, s);
  return b.to_hex();
}

Seed hex_bytes(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParameterError("odd-length hex seed");
  return BitString::from_hex(hex, static_cast<int>(hex.size()) * 4).bytes();
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParameterError("invalid integer in key text");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    size_t p = s.find(sep);
    out.push_back(s.substr(0, p));
    if (p == std::string_view::npos) return out;
    s.remove_prefix(p + 1);
  }
}

// Adds to `out` the minimal set of subtree roots below `pos` that avoid every
// punctured point in [lo, hi).
void cover(int m, NodePos pos, const Seed& seed, std::span<const uint64_t> points,
           std::map<NodePos, Seed>& out) {
  int span_bits = m - pos.depth;
  uint64_t first = pos.prefix << span_bits;
  uint64_t last = first + (uint64_t{1} << span_bits);
  auto lo = std::lower_bound(points.begin(), points.end(), first);
  auto hi = std::lower_bound(lo, points.end(), last);
  if (lo == hi) {
    out.emplace(pos, seed);
    return;
  }
  if (pos.depth == m) return;
  std::span<const uint64_t> sub(lo, hi);
  for (int b = 0; b < 2; ++b) {
    cover(m, NodePos{pos.depth + 1, (pos.prefix << 1) | static_cast<uint64_t>(b)},
          child_seed(seed, b), sub, out);
  }
}

std::vector<uint64_t> sorted_points(int m, std::span<const uint64_t> S) {
  std::vector<uint64_t> pts(S.begin(), S.end());
  for (uint64_t x : pts) check_input(m, x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

PrfKey::PrfKey(Seed root_seed, int input_bits, int output_bits)
    : root_seed_(std::move(root_seed)), input_bits_(input_bits), output_bits_(output_bits) {
  check_shape(input_bits, output_bits);
  if (root_seed_.size() < 8 || root_seed_.size() > 32) {
    throw ParameterError("puncturable-prf: seed must be 8 to 32 bytes");
  }
}

std::string PrfKey::to_hex() const {
  return "prf:" + std::to_string(input_bits_) + ":" + std::to_string(output_bits_) + ":" +
         bytes_hex(root_seed_);
}

PrfKey PrfKey::from_hex(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 4 || parts[0] != "prf") throw ParameterError("malformed PRF key text");
  return PrfKey(hex_bytes(parts[3]), parse_int(parts[1]), parse_int(parts[2]));
}

std::string PuncturedPrfKey::to_hex() const {
  std::string s = "pprf:" + std::to_string(input_bits_) + ":" + std::to_string(output_bits_) + ":";
  bool first = true;
  for (uint64_t x : punctured_) {
    if (!first) s += ",";
    s += cplab::to_hex(x, input_bits_);
    first = false;
  }
  s += ":";
  first = true;
  for (const auto& [pos, seed] : copath_) {
    if (!first) s += ";";
    s += std::to_string(pos.depth) + "." + cplab::to_hex(pos.prefix, pos.depth) + "." + bytes_hex(seed);
    first = false;
  }
  return s;
}

PuncturedPrfKey PuncturedPrfKey::from_hex(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 5 || parts[0] != "pprf") throw ParameterError("malformed punctured key text");
  PuncturedPrfKey k;
  k.input_bits_ = parse_int(parts[1]);
  k.output_bits_ = parse_int(parts[2]);
  check_shape(k.input_bits_, k.output_bits_);
  if (!parts[3].empty()) {
    for (auto p : split(parts[3], ',')) k.punctured_.insert(parse_hex(p));
  }
  if (!parts[4].empty()) {
    for (auto node : split(parts[4], ';')) {
      auto f = split(node, '.');
      if (f.size() != 3) throw ParameterError("malformed copath node");
      k.copath_.emplace(NodePos{parse_int(f[0]), parse_hex(f[1])}, hex_bytes(f[2]));
    }
  }
  return k;
}

Seed child_seed(const Seed& seed, int bit) {
  const uint8_t tag = static_cast<uint8_t>(bit & 1);
  Digest h = sha256(seed, std::span<const uint8_t>(&tag, 1));
  return Seed(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(seed.size()));
}

Seed node_seed(const PrfKey& key, NodePos pos) {
  Seed s = key.root_seed();
  for (int i = pos.depth - 1; i >= 0; --i) s = child_seed(s, static_cast<int>((pos.prefix >> i) & 1));
  return s;
}

BitString expand_leaf(const Seed& leaf, int output_bits) {
  std::vector<uint8_t> out;
  size_t need = static_cast<size_t>(output_bits + 7) / 8;
  std::vector<uint8_t> buf(leaf);
  buf.push_back(0x02);
  buf.resize(buf.size() + 4);
  for (uint32_t counter = 0; out.size() < need; ++counter) {
    size_t o = buf.size() - 4;
    buf[o] = static_cast<uint8_t>(counter >> 24);
    buf[o + 1] = static_cast<uint8_t>(counter >> 16);
    buf[o + 2] = static_cast<uint8_t>(counter >> 8);
    buf[o + 3] = static_cast<uint8_t>(counter);
    Digest h = sha256(buf);
    out.insert(out.end(), h.begin(), h.end());
  }
  out.resize(need);
  return BitString(output_bits, std::move(out));
}

PrfKey setup(int security_bits, int input_bits, int output_bits, Rng& rng) {
  if (security_bits % 8 != 0 || security_bits < 64 || security_bits > 256) {
    throw ParameterError("puncturable-prf: security bits must be a multiple of 8 in [64, 256]");
  }
  check_shape(input_bits, output_bits);
  Seed seed(static_cast<size_t>(security_bits / 8));
  for (auto& b : seed) b = static_cast<uint8_t>(rng.next() >> 56);
  return PrfKey(std::move(seed), input_bits, output_bits);
}

BitString eval(const PrfKey& key, uint64_t x) {
  check_input(key.input_bits(), x);
  return expand_leaf(node_seed(key, NodePos{key.input_bits(), x}), key.output_bits());
}

uint64_t eval_u64(const PrfKey& key, uint64_t x) {
  if (key.output_bits() > 64) throw ParameterError("eval_u64 needs output width <= 64");
  return eval(key, x).to_u64();
}

PuncturedPrfKey puncture(const PrfKey& key, std::span<const uint64_t> S) {
  int m = key.input_bits();
  auto pts = sorted_points(m, S);
  PuncturedPrfKey pk;
  pk.input_bits_ = m;
  pk.output_bits_ = key.output_bits();
  pk.punctured_.insert(pts.begin(), pts.end());
  cover(m, NodePos{0, 0}, key.root_seed(), pts, pk.copath_);
  return pk;
}

PuncturedPrfKey puncture(const PrfKey& key, std::initializer_list<uint64_t> S) {
  return puncture(key, std::span<const uint64_t>(S.begin(), S.size()));
}

PuncturedPrfKey puncture(const PuncturedPrfKey& key, std::span<const uint64_t> S) {
  int m = key.input_bits();
  auto pts = sorted_points(m, S);
  PuncturedPrfKey pk;
  pk.input_bits_ = m;
  pk.output_bits_ = key.output_bits();
  pk.punctured_ = key.punctured_;
  pk.punctured_.insert(pts.begin(), pts.end());
  for (const auto& [pos, seed] : key.copath_) cover(m, pos, seed, pts, pk.copath_);
  return pk;
}

std::optional<BitString> punctured_eval(const PuncturedPrfKey& key, uint64_t x) {
  int m = key.input_bits();
  check_input(m, x);
  for (int depth = 0; depth <= m; ++depth) {
    auto it = key.copath_nodes().find(NodePos{depth, x >> (m - depth)});
    if (it == key.copath_nodes().end()) continue;
    Seed s = it->second;
    for (int i = m - depth - 1; i >= 0; --i) s = child_seed(s, static_cast<int>((x >> i) & 1));
    return expand_leaf(s, key.output_bits());
  }
  return std::nullopt;
}

std::optional<uint64_t> punctured_eval_u64(const PuncturedPrfKey& key, uint64_t x) {
  if (key.output_bits() > 64) throw ParameterError("punctured_eval_u64 needs output width <= 64");
  auto r = punctured_eval(key, x);
  if (!r) return std::nullopt;
  return r->to_u64();
}

}  // namespace cplab::prf
