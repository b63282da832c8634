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

#include "cplab/pirates.hpp"

#include "cplab/errors.hpp"

namespace cplab::protect {

SideProgram evaluating_side(std::string label, const PirateInput& in, QuantumRegister reg) {
  const MalleablePuncturableScheme* scheme = in.scheme;
  obf::ObfProgram P = in.P;
  nlohmann::json aux = in.aux;
  SideProgram side;
  side.label = std::move(label);
  side.reg = std::move(reg);
  side.answer = [scheme, P, aux](uint64_t ch, QuantumRegister& r, Rng& rng) {
    return protected_scheme_eval(*scheme, P, aux, r, ch, rng);
  };
  side.acceptance = [scheme, P, aux](uint64_t ch, uint64_t ak) {
    auto q = scheme->direct_query(aux, ch);
    if (!q) throw ParameterError("scheme evaluation is not a single direct query; no acceptance projector");
    return evaluation_acceptance(P, *q, [scheme, ak](uint64_t y) { return scheme->ver(ak, y); });
  };
  return side;
}

SideProgram guessing_side(std::string label, const MalleablePuncturableScheme& scheme) {
  const int n = scheme.output_bits();
  if (n > kMaxGuessQubits) throw CapacityError("protection-games: guess register limited to 8 qubits");
  const MalleablePuncturableScheme* s = &scheme;
  SideProgram side;
  side.label = std::move(label);
  side.reg = QuantumRegister::maximally_mixed(n);
  side.answer = [](uint64_t, QuantumRegister& r, Rng& rng) -> Answer {
    return quantum::measure_computational(r, rng);
  };
  side.acceptance = [s, n](uint64_t, uint64_t ak) {
    SupportedOperator op;
    for (uint64_t y = 0; y < (uint64_t{1} << n); ++y) {
      if (s->ver(ak, y)) op.support.push_back(y);
    }
    const auto k = static_cast<Eigen::Index>(op.support.size());
    op.block = Matrix::Identity(k, k);
    return op;
  };
  return side;
}

std::vector<std::string> pirate_names() { return {"forwarding", "basis-cloner", "hadamard-cloner"}; }

PirateAdversary make_pirate(const std::string& name) {
  if (name == "forwarding") {
    return {name, [](const PirateInput& in, Rng&) {
              return PirateSplit{evaluating_side("register", in, in.reg), guessing_side("guess", *in.scheme)};
            }};
  }
  if (name == "basis-cloner") {
    return {name, [](const PirateInput& in, Rng& rng) {
              uint64_t v = quantum::measure_computational(in.reg, rng);
              auto copy = QuantumRegister::basis_state(in.reg.num_qubits(), v);
              return PirateSplit{evaluating_side("basis-copy", in, copy), evaluating_side("basis-copy", in, copy)};
            }};
  }
  if (name == "hadamard-cloner") {
    return {name, [](const PirateInput& in, Rng& rng) {
              uint64_t w = quantum::measure_computational(quantum::hadamard_all(in.reg), rng);
              auto copy = quantum::hadamard_all(QuantumRegister::basis_state(in.reg.num_qubits(), w));
              return PirateSplit{evaluating_side("hadamard-copy", in, copy),
                                 evaluating_side("hadamard-copy", in, copy)};
            }};
  }
  throw ParameterError("unknown pirate '" + name + "'");
}

}  // namespace cplab::protect
