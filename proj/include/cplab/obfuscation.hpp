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
#include <functional>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cplab/rng.hpp"

namespace cplab::obf {

// A program output is either a value or bottom (nullopt).
using Output = std::optional<uint64_t>;
using ProgramFn = std::function<Output(uint64_t)>;

struct InputField {
  std::string name;
  int bits = 0;
  bool operator==(const InputField&) const = default;
};

// Typed tuple of bit fields packed into one word, first field most
// significant. Total width is at most 63 bits.
class InputSpec {
 public:
  InputSpec() = default;
  InputSpec(std::initializer_list<InputField> fields);
  explicit InputSpec(std::vector<InputField> fields);

  const std::vector<InputField>& fields() const { return fields_; }
  int total_bits() const { return total_bits_; }
  uint64_t domain_size() const { return uint64_t{1} << total_bits_; }

  uint64_t pack(std::span<const uint64_t> values) const;
  uint64_t pack(std::initializer_list<uint64_t> values) const;
  std::vector<uint64_t> unpack(uint64_t packed) const;
  bool contains(uint64_t packed) const { return packed < domain_size(); }

  // "name:bits,name:bits".
  std::string to_string() const;

  bool operator==(const InputSpec&) const = default;

 private:
  std::vector<InputField> fields_;
  int total_bits_ = 0;
};

// Opaque handle to a registered program. Only identity metadata and
// evaluation are exposed.
class ObfProgram {
 public:
  ObfProgram() = default;

  uint64_t program_id() const;
  const InputSpec& input_spec() const;
  const std::string& size_pad() const;
  bool valid() const { return entry_ != nullptr; }

  // Throws DimensionMismatch for inputs outside the declared space.
  Output operator()(uint64_t packed) const;
  Output eval(std::initializer_list<uint64_t> fields) const;

  // "obf:<program_id hex>"; resolvable through the issuing registry.
  std::string token() const;

  struct Entry;

 private:
  friend class Registry;
  explicit ObfProgram(std::shared_ptr<const Entry> e) : entry_(std::move(e)) {}
  std::shared_ptr<const Entry> entry_;
};

// Append-only registry standing in for an obfuscator. Registration is
// serialised; handles are immutable afterwards.
class Registry {
 public:
  ObfProgram obfuscate(ProgramFn program, InputSpec spec, std::string size_pad, Rng& rng);
  std::optional<ObfProgram> resolve(const std::string& token) const;
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<uint64_t, std::weak_ptr<const ObfProgram::Entry>> entries_;
};

// Inputs to compare: domain_size points mapped through `at`.
struct Domain {
  uint64_t size = 0;
  std::function<uint64_t(uint64_t)> at;

  static Domain full(const InputSpec& spec);
  static Domain of(std::vector<uint64_t> points);
};

constexpr uint64_t kMaxEquivalenceDomain = uint64_t{1} << 22;

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<uint64_t> counterexample;  // packed input, first in domain order
  uint64_t points_checked = 0;
  std::vector<std::string> warnings;
};

// Exhaustive comparison. Throws CapacityError above kMaxEquivalenceDomain
// points and DimensionMismatch when the input specs differ. Differing size
// pads produce a warning only.
EquivalenceResult check_equivalence(const ObfProgram& a, const ObfProgram& b);
EquivalenceResult check_equivalence(const ObfProgram& a, const ObfProgram& b, const Domain& domain);

}  // namespace cplab::obf
