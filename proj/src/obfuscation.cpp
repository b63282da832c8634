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

#include "cplab/obfuscation.hpp"

#include <sstream>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab::obf {

struct ObfProgram::Entry {
  uint64_t id = 0;
  InputSpec spec;
  std::string pad;
  ProgramFn fn;
};

InputSpec::InputSpec(std::initializer_list<InputField> fields) : InputSpec(std::vector<InputField>(fields)) {}

InputSpec::InputSpec(std::vector<InputField> fields) : fields_(std::move(fields)) {
  for (const auto& f : fields_) {
    if (f.bits < 1) throw ParameterError("input field '" + f.name + "' must be at least one bit wide");
    total_bits_ += f.bits;
  }
  if (total_bits_ > 63) throw CapacityError("input spec wider than 63 bits");
}

uint64_t InputSpec::pack(std::span<const uint64_t> values) const {
  if (values.size() != fields_.size()) throw DimensionMismatch("wrong number of input fields");
  uint64_t out = 0;
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (values[i] > low_mask(fields_[i].bits)) {
      throw DimensionMismatch("value too wide for input field '" + fields_[i].name + "'");
    }
    out = (out << fields_[i].bits) | values[i];
  }
  return out;
}

uint64_t InputSpec::pack(std::initializer_list<uint64_t> values) const {
  return pack(std::span<const uint64_t>(values.begin(), values.size()));
}

std::vector<uint64_t> InputSpec::unpack(uint64_t packed) const {
  if (!contains(packed)) throw DimensionMismatch("packed input outside the declared space");
  std::vector<uint64_t> out(fields_.size());
  for (size_t i = fields_.size(); i-- > 0;) {
    out[i] = packed & low_mask(fields_[i].bits);
    packed >>= fields_[i].bits;
  }
  return out;
}

std::string InputSpec::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < fields_.size(); ++i) os << (i ? "," : "") << fields_[i].name << ':' << fields_[i].bits;
  return os.str();
}

namespace {

const ObfProgram::Entry& require(const std::shared_ptr<const ObfProgram::Entry>& e) {
  if (!e) throw ParameterError("empty program handle");
  return *e;
}

}  // namespace

uint64_t ObfProgram::program_id() const { return require(entry_).id; }
const InputSpec& ObfProgram::input_spec() const { return require(entry_).spec; }
const std::string& ObfProgram::size_pad() const { return require(entry_).pad; }

Output ObfProgram::operator()(uint64_t packed) const {
  const Entry& e = require(entry_);
  if (!e.spec.contains(packed)) throw DimensionMismatch("input outside the program's declared space");
  return e.fn(packed);
}

Output ObfProgram::eval(std::initializer_list<uint64_t> fields) const {
  return (*this)(input_spec().pack(fields));
}

std::string ObfProgram::token() const { return "obf:" + to_hex(program_id(), 64); }

ObfProgram Registry::obfuscate(ProgramFn program, InputSpec spec, std::string size_pad, Rng& rng) {
  if (!program) throw ParameterError("cannot register an empty program");
  auto entry = std::make_shared<ObfProgram::Entry>();
  entry->spec = std::move(spec);
  entry->pad = std::move(size_pad);
  entry->fn = std::move(program);
  std::lock_guard lock(mu_);
  do {
    entry->id = rng.bits(64);
  } while (entries_.count(entry->id));
  entries_.emplace(entry->id, entry);
  return ObfProgram(std::move(entry));
}

std::optional<ObfProgram> Registry::resolve(const std::string& token) const {
  if (token.rfind("obf:", 0) != 0) return std::nullopt;
  uint64_t id = 0;
  try {
    id = parse_hex(token.substr(4));
  } catch (const Error&) {
    return std::nullopt;
  }
  std::lock_guard lock(mu_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  auto e = it->second.lock();
  if (!e) return std::nullopt;
  return ObfProgram(std::move(e));
}

size_t Registry::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

Domain Domain::full(const InputSpec& spec) {
  return Domain{spec.domain_size(), [](uint64_t i) { return i; }};
}

Domain Domain::of(std::vector<uint64_t> points) {
  auto shared = std::make_shared<const std::vector<uint64_t>>(std::move(points));
  return Domain{shared->size(), [shared](uint64_t i) { return (*shared)[i]; }};
}

EquivalenceResult check_equivalence(const ObfProgram& a, const ObfProgram& b) {
  return check_equivalence(a, b, Domain::full(a.input_spec()));
}

EquivalenceResult check_equivalence(const ObfProgram& a, const ObfProgram& b, const Domain& domain) {
  if (!(a.input_spec() == b.input_spec())) throw DimensionMismatch("programs have different input specs");
  if (domain.size > kMaxEquivalenceDomain) throw CapacityError("equivalence domain exceeds 2^22 points");
  EquivalenceResult r;
  if (a.size_pad() != b.size_pad()) {
    r.warnings.push_back("size pads differ: '" + a.size_pad() + "' vs '" + b.size_pad() + "'");
  }
  for (uint64_t i = 0; i < domain.size; ++i) {
    uint64_t x = domain.at(i);
    ++r.points_checked;
    if (a(x) != b(x)) {
      r.counterexample = x;
      return r;
    }
  }
  r.equivalent = true;
  return r;
}

}  // namespace cplab::obf
