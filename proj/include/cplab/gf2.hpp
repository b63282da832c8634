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

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cplab/rng.hpp"

namespace cplab::gf2 {

constexpr int kMaxDim = 64;
// Largest subspace dimension that may be enumerated element by element.
constexpr int kMaxEnumerationDim = 24;

// Vector in F_2^d. Coordinate i is bit i of the packed word.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  Gf2Vector(int dim, uint64_t bits);

  // Builds a vector from explicit coordinates, coordinate 0 first.
  static Gf2Vector from_coords(std::initializer_list<int> coords);
  static Gf2Vector zero(int dim) { return Gf2Vector(dim, 0); }
  static Gf2Vector random(int dim, Rng& rng);

  int dim() const { return dim_; }
  uint64_t word() const { return bits_; }
  bool operator[](int i) const { return (bits_ >> i) & 1; }
  bool is_zero() const { return bits_ == 0; }
  int weight() const;

  Gf2Vector operator^(const Gf2Vector& other) const;
  Gf2Vector& operator^=(const Gf2Vector& other);
  bool operator==(const Gf2Vector& other) const = default;

  // "0110" with coordinate 0 first.
  std::string to_string() const;

 private:
  int dim_ = 0;
  uint64_t bits_ = 0;
};

// Inner product over F_2.
int dot(const Gf2Vector& a, const Gf2Vector& b);

// Subspace held as a reduced row echelon basis. The pivot of a row is its
// lowest set coordinate; rows are sorted by pivot and every pivot column
// carries exactly one 1.
class Gf2Subspace {
 public:
  Gf2Subspace() = default;

  static Gf2Subspace zero(int ambient_dim);
  static Gf2Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<uint64_t>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<Gf2Vector> basis() const;
  uint64_t pivot_mask() const;

  // Zeroes the pivot coordinates of v by adding basis rows.
  uint64_t reduce(uint64_t v) const;
  bool contains(const Gf2Vector& v) const;
  bool contains_word(uint64_t v) const { return reduce(v) == 0; }
  bool is_subspace_of(const Gf2Subspace& other) const;

  // Element with the given coefficient bits over the basis rows.
  uint64_t combination(uint64_t coeffs) const;
  Gf2Vector random_element(Rng& rng) const;
  // All 2^dim elements in coefficient order; dim must be <= 24.
  std::vector<uint64_t> elements() const;

  bool operator==(const Gf2Subspace& other) const = default;

  // "gf2:<d>:<row>,<row>,..." with rows as hex words.
  std::string serialize() const;
  static Gf2Subspace deserialize(std::string_view text);

 private:
  friend Gf2Subspace rref_words(int ambient_dim, std::vector<uint64_t> rows);
  int ambient_dim_ = 0;
  std::vector<uint64_t> rows_;
  std::vector<int> pivots_;
};

class Gf2Coset {
 public:
  Gf2Coset() = default;
  Gf2Coset(Gf2Subspace subspace, Gf2Vector shift);

  const Gf2Subspace& subspace() const { return subspace_; }
  const Gf2Vector& shift() const { return shift_; }
  int ambient_dim() const { return subspace_.ambient_dim(); }

  bool contains(const Gf2Vector& v) const;
  bool contains_word(uint64_t v) const { return subspace_.contains_word(v ^ shift_.word()); }
  std::vector<uint64_t> elements() const;

  // Equal subspaces and shifts differing by a subspace element.
  bool operator==(const Gf2Coset& other) const;

 private:
  Gf2Subspace subspace_;
  Gf2Vector shift_;
};

// Span of the given words in canonical form.
Gf2Subspace rref_words(int ambient_dim, std::vector<uint64_t> rows);
// Span of the given vectors; all must have dimension ambient_dim.
Gf2Subspace rref(int ambient_dim, std::span<const Gf2Vector> vectors);
// Span of a nonempty list; the dimension is read from the first vector.
Gf2Subspace rref(std::span<const Gf2Vector> vectors);
Gf2Subspace rref(std::initializer_list<Gf2Vector> vectors);

// Orthogonal complement under the standard inner product.
Gf2Subspace dual(const Gf2Subspace& space);

// Span of the union.
Gf2Subspace sum(const Gf2Subspace& a, const Gf2Subspace& b);

bool coset_contains(const Gf2Coset& coset, const Gf2Vector& v);

// The coset element with zeros at every pivot coordinate of the subspace.
Gf2Vector canonical_rep(const Gf2Coset& coset);
Gf2Vector canonical_rep(const Gf2Subspace& space, const Gf2Vector& shift);

// Affine solution set of M x = rhs where M has the given rows (row i is a
// mask over the input coordinates). Returns false when inconsistent.
struct AffineSolution {
  bool consistent = false;
  uint64_t particular = 0;
  Gf2Subspace kernel;
};
AffineSolution solve(int num_vars, std::span<const uint64_t> rows, uint64_t rhs);

// Uniformly random subspace of the given dimension: random k x d matrices are
// drawn until full rank and the row span is canonicalised.
Gf2Subspace sample_subspace(int ambient_dim, int k, Rng& rng);
// Uniformly random superspace of `base` with dimension k.
Gf2Subspace sample_superspace(const Gf2Subspace& base, int k, Rng& rng);
// Uniformly random subspace of `base` with dimension k.
Gf2Subspace sample_subspace_of(const Gf2Subspace& base, int k, Rng& rng);

struct CosetInstance {
  int d = 0;
  Gf2Subspace A;
  Gf2Vector a1;
  Gf2Vector a2;
  Gf2Subspace B1;  // superspace of A, dimension 3d/4
  Gf2Subspace B2;  // subspace of A, dimension d/4
  Gf2Vector t;     // z1 + a1 with z1 uniform in B1
  Gf2Vector t_prime;  // z2 + a2 with z2 uniform in dual(B2)

  Gf2Coset primal() const { return Gf2Coset(A, a1); }
  Gf2Coset dual_coset() const;
  Gf2Coset outer_primal() const { return Gf2Coset(B1, t); }
  Gf2Coset outer_dual() const;
};

// d must be a positive multiple of 4 and at most 64.
CosetInstance sample_coset_instance(int d, Rng& rng);

}  // namespace cplab::gf2
