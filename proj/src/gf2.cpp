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

#include "cplab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab::gf2 {
namespace {

void check_dim(int d) {
  if (d < 0 || d > kMaxDim) throw ParameterError("GF(2) dimension must be in [0, 64]");
}

void check_same(int a, int b) {
  if (a != b) throw DimensionMismatch("GF(2) dimension mismatch");
}

}  // namespace

Gf2Vector::Gf2Vector(int dim, uint64_t bits) : dim_(dim), bits_(bits) {
  check_dim(dim);
  if ((bits & ~low_mask(dim)) != 0) {
    throw DimensionMismatch("vector has bits beyond its dimension");
  }
}

Gf2Vector Gf2Vector::from_coords(std::initializer_list<int> coords) {
  uint64_t bits = 0;
  int i = 0;
  for (int c : coords) {
    if (c) bits |= uint64_t{1} << i;
    ++i;
  }
  return Gf2Vector(static_cast<int>(coords.size()), bits);
}

Gf2Vector Gf2Vector::random(int dim, Rng& rng) { return Gf2Vector(dim, rng.bits(dim)); }

int Gf2Vector::weight() const { return std::popcount(bits_); }

Gf2Vector Gf2Vector::operator^(const Gf2Vector& other) const {
  check_same(dim_, other.dim_);
  return Gf2Vector(dim_, bits_ ^ other.bits_);
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
  check_same(dim_, other.dim_);
  bits_ ^= other.bits_;
  return *this;
}

std::string Gf2Vector::to_string() const {
  std::string s(dim_, '0');
  for (int i = 0; i < dim_; ++i) s[i] = (*this)[i] ? '1' : '0';
  return s;
}

int dot(const Gf2Vector& a, const Gf2Vector& b) {
  check_same(a.dim(), b.dim());
  return parity(a.word() & b.word());
}

Gf2Subspace rref_words(int ambient_dim, std::vector<uint64_t> rows) {
  check_dim(ambient_dim);
  uint64_t mask = low_mask(ambient_dim);
  for (uint64_t r : rows) {
    if ((r & ~mask) != 0) throw DimensionMismatch("row has bits beyond the ambient dimension");
  }
  Gf2Subspace out;
  out.ambient_dim_ = ambient_dim;
  size_t rank = 0;
  for (int c = 0; c < ambient_dim && rank < rows.size(); ++c) {
    uint64_t bit = uint64_t{1} << c;
    size_t r = rank;
    while (r < rows.size() && !(rows[r] & bit)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i] & bit)) rows[i] ^= rows[rank];
    }
    out.pivots_.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  out.rows_ = std::move(rows);
  return out;
}

Gf2Subspace Gf2Subspace::zero(int ambient_dim) { return rref_words(ambient_dim, {}); }

Gf2Subspace Gf2Subspace::full(int ambient_dim) {
  std::vector<uint64_t> rows;
  for (int i = 0; i < ambient_dim; ++i) rows.push_back(uint64_t{1} << i);
  return rref_words(ambient_dim, std::move(rows));
}

std::vector<Gf2Vector> Gf2Subspace::basis() const {
  std::vector<Gf2Vector> out;
  for (uint64_t r : rows_) out.emplace_back(ambient_dim_, r);
  return out;
}

uint64_t Gf2Subspace::pivot_mask() const {
  uint64_t m = 0;
  for (int p : pivots_) m |= uint64_t{1} << p;
  return m;
}

uint64_t Gf2Subspace::reduce(uint64_t v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    if ((v >> pivots_[i]) & 1) v ^= rows_[i];
  }
  return v;
}

bool Gf2Subspace::contains(const Gf2Vector& v) const {
  check_same(ambient_dim_, v.dim());
  return contains_word(v.word());
}

bool Gf2Subspace::is_subspace_of(const Gf2Subspace& other) const {
  check_same(ambient_dim_, other.ambient_dim_);
  return std::all_of(rows_.begin(), rows_.end(),
                     [&](uint64_t r) { return other.contains_word(r); });
}

uint64_t Gf2Subspace::combination(uint64_t coeffs) const {
  uint64_t v = 0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if ((coeffs >> i) & 1) v ^= rows_[i];
  }
  return v;
}

Gf2Vector Gf2Subspace::random_element(Rng& rng) const {
  return Gf2Vector(ambient_dim_, combination(rng.bits(dim())));
}

std::vector<uint64_t> Gf2Subspace::elements() const {
  if (dim() > kMaxEnumerationDim) throw CapacityError("gf2-linalg: enumeration limited to dimension 24");
  size_t count = size_t{1} << dim();
  std::vector<uint64_t> out(count);
  // Gray-code walk: one row addition per element.
  uint64_t v = 0;
  out[0] = 0;
  for (size_t k = 1; k < count; ++k) {
    v ^= rows_[std::countr_zero(k)];
    out[k ^ (k >> 1)] = v;
  }
  return out;
}

std::string Gf2Subspace::serialize() const {
  std::string s = "gf2:" + std::to_string(ambient_dim_) + ":";
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ",";
    s += to_hex(rows_[i], ambient_dim_);
  }
  return s;
}

Gf2Subspace Gf2Subspace::deserialize(std::string_view text) {
  if (!text.starts_with("gf2:")) throw ParameterError("subspace text must start with gf2:");
  text.remove_prefix(4);
  size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParameterError("subspace text lacks a dimension");
  int d = 0;
  auto dim_text = text.substr(0, colon);
  auto [ptr, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), d);
  if (ec != std::errc() || ptr != dim_text.data() + dim_text.size()) {
    throw ParameterError("invalid subspace dimension");
  }
  text.remove_prefix(colon + 1);
  std::vector<uint64_t> rows;
  while (!text.empty()) {
    size_t comma = text.find(',');
    rows.push_back(parse_hex(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return rref_words(d, std::move(rows));
}

Gf2Coset::Gf2Coset(Gf2Subspace subspace, Gf2Vector shift)
    : subspace_(std::move(subspace)), shift_(shift) {
  check_same(subspace_.ambient_dim(), shift_.dim());
}

bool Gf2Coset::contains(const Gf2Vector& v) const {
  check_same(ambient_dim(), v.dim());
  return contains_word(v.word());
}

std::vector<uint64_t> Gf2Coset::elements() const {
  auto out = subspace_.elements();
  for (auto& v : out) v ^= shift_.word();
  return out;
}

bool Gf2Coset::operator==(const Gf2Coset& other) const {
  return subspace_ == other.subspace_ && subspace_.contains_word(shift_.word() ^ other.shift_.word());
}

Gf2Subspace rref(int ambient_dim, std::span<const Gf2Vector> vectors) {
  std::vector<uint64_t> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    check_same(ambient_dim, v.dim());
    rows.push_back(v.word());
  }
  return rref_words(ambient_dim, std::move(rows));
}

Gf2Subspace rref(std::span<const Gf2Vector> vectors) {
  if (vectors.empty()) throw ParameterError("rref of an empty list needs an explicit dimension");
  return rref(vectors.front().dim(), vectors);
}

Gf2Subspace rref(std::initializer_list<Gf2Vector> vectors) {
  return rref(std::span<const Gf2Vector>(vectors.begin(), vectors.size()));
}

Gf2Subspace dual(const Gf2Subspace& space) {
  int d = space.ambient_dim();
  uint64_t pivots = space.pivot_mask();
  std::vector<uint64_t> out;
  for (int f = 0; f < d; ++f) {
    if ((pivots >> f) & 1) continue;
    uint64_t w = uint64_t{1} << f;
    for (size_t i = 0; i < space.rows().size(); ++i) {
      if ((space.rows()[i] >> f) & 1) w |= uint64_t{1} << space.pivots()[i];
    }
    out.push_back(w);
  }
  return rref_words(d, std::move(out));
}

Gf2Subspace sum(const Gf2Subspace& a, const Gf2Subspace& b) {
  check_same(a.ambient_dim(), b.ambient_dim());
  std::vector<uint64_t> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return rref_words(a.ambient_dim(), std::move(rows));
}

bool coset_contains(const Gf2Coset& coset, const Gf2Vector& v) { return coset.contains(v); }

Gf2Vector canonical_rep(const Gf2Subspace& space, const Gf2Vector& shift) {
  check_same(space.ambient_dim(), shift.dim());
  return Gf2Vector(shift.dim(), space.reduce(shift.word()));
}

Gf2Vector canonical_rep(const Gf2Coset& coset) {
  return canonical_rep(coset.subspace(), coset.shift());
}

AffineSolution solve(int num_vars, std::span<const uint64_t> rows, uint64_t rhs) {
  check_dim(num_vars);
  if (rows.size() > 64) throw CapacityError("gf2-linalg: at most 64 equations");
  uint64_t mask = low_mask(num_vars);
  std::vector<uint64_t> m(rows.begin(), rows.end());
  std::vector<uint8_t> b(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if ((m[i] & ~mask) != 0) throw DimensionMismatch("equation has bits beyond the variable count");
    b[i] = (rhs >> i) & 1;
  }
  size_t rank = 0;
  std::vector<int> pivots;
  for (int c = 0; c < num_vars && rank < m.size(); ++c) {
    uint64_t bit = uint64_t{1} << c;
    size_t r = rank;
    while (r < m.size() && !(m[r] & bit)) ++r;
    if (r == m.size()) continue;
    std::swap(m[rank], m[r]);
    std::swap(b[rank], b[r]);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i != rank && (m[i] & bit)) {
        m[i] ^= m[rank];
        b[i] ^= b[rank];
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  AffineSolution sol;
  for (size_t i = rank; i < m.size(); ++i) {
    if (b[i]) {
      sol.consistent = false;
      sol.kernel = Gf2Subspace::zero(num_vars);
      return sol;
    }
  }
  sol.consistent = true;
  for (size_t i = 0; i < rank; ++i) {
    if (b[i]) sol.particular |= uint64_t{1} << pivots[i];
  }
  m.resize(rank);
  sol.kernel = dual(rref_words(num_vars, std::move(m)));
  return sol;
}

Gf2Subspace sample_subspace(int ambient_dim, int k, Rng& rng) {
  check_dim(ambient_dim);
  if (k < 0 || k > ambient_dim) throw ParameterError("subspace dimension out of range");
  for (;;) {
    std::vector<uint64_t> rows(k);
    for (auto& r : rows) r = rng.bits(ambient_dim);
    Gf2Subspace s = rref_words(ambient_dim, std::move(rows));
    if (s.dim() == k) return s;
  }
}

Gf2Subspace sample_superspace(const Gf2Subspace& base, int k, Rng& rng) {
  int d = base.ambient_dim();
  if (k < base.dim() || k > d) throw ParameterError("superspace dimension out of range");
  Gf2Subspace cur = base;
  while (cur.dim() < k) {
    uint64_t v = rng.bits(d);
    if (cur.contains_word(v)) continue;
    std::vector<uint64_t> rows = cur.rows();
    rows.push_back(v);
    cur = rref_words(d, std::move(rows));
  }
  return cur;
}

Gf2Subspace sample_subspace_of(const Gf2Subspace& base, int k, Rng& rng) {
  if (k < 0 || k > base.dim()) throw ParameterError("subspace dimension out of range");
  for (;;) {
    std::vector<uint64_t> rows(k);
    for (auto& r : rows) r = base.combination(rng.bits(base.dim()));
    Gf2Subspace s = rref_words(base.ambient_dim(), std::move(rows));
    if (s.dim() == k) return s;
  }
}

Gf2Coset CosetInstance::dual_coset() const { return Gf2Coset(dual(A), a2); }

Gf2Coset CosetInstance::outer_dual() const { return Gf2Coset(dual(B2), t_prime); }

CosetInstance sample_coset_instance(int d, Rng& rng) {
  if (d < 4 || d % 4 != 0 || d > kMaxDim) {
    throw ParameterError("coset instances need d a positive multiple of 4, at most 64");
  }
  CosetInstance inst;
  inst.d = d;
  inst.A = sample_subspace(d, d / 2, rng);
  inst.a1 = Gf2Vector::random(d, rng);
  inst.a2 = Gf2Vector::random(d, rng);
  inst.B1 = sample_superspace(inst.A, 3 * d / 4, rng);
  inst.B2 = sample_subspace_of(inst.A, d / 4, rng);
  Gf2Vector z1 = inst.B1.random_element(rng);
  Gf2Vector z2 = dual(inst.B2).random_element(rng);
  inst.t = z1 ^ inst.a1;
  inst.t_prime = z2 ^ inst.a2;
  return inst;
}

}  // namespace cplab::gf2
