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
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "cplab/gf2.hpp"
#include "cplab/obfuscation.hpp"
#include "cplab/prf.hpp"
#include "cplab/quantum.hpp"
#include "cplab/rng.hpp"
#include "cplab/scheme.hpp"

namespace cplab::protect {

using quantum::Matrix;
using quantum::QuantumRegister;

constexpr int kMaxCosetDim = 12;
// Label used for bottom outputs when measuring P coherently.
constexpr uint64_t kBottomLabel = UINT64_MAX;

struct GenStateResult {
  obf::ObfProgram pp;          // obfuscated membership program M
  QuantumRegister reg;         // coset state |A_{a1,a2}>
  gf2::CosetInstance secret;   // challenger only
};

// M(b, v) over the spec {b:1, v:d}: b = 0 tests v in primal, b = 1 tests v in
// dual. Outputs 1 for TRUE and 0 for FALSE.
obf::ObfProgram membership_program(const gf2::Gf2Coset& primal, const gf2::Gf2Coset& dual, obf::Registry& registry,
                                   Rng& rng);

// d must be a multiple of 4 in [4, 12].
GenStateResult gen_state(int d, obf::Registry& registry, Rng& rng);

struct ProtectResult {
  obf::ObfProgram P;  // spec {x:n_in, b:1, v:d}
  nlohmann::json aux;
  prf::PrfKey K;      // challenger only
};

// P(x, 0, v) = C(x) xor PRF(K, x) when M(0, v), P(x, 1, v) = PRF(K, x) when
// M(1, v), bottom otherwise. K is fresh for every call.
ProtectResult protect(const obf::ObfProgram& pp, const SchemeKey& k, int n_in, int n_out, obf::Registry& registry,
                      Rng& rng);

// Everything issued to the holder plus the challenger's coset instance.
struct ProtectedProgram {
  obf::ObfProgram pp;
  QuantumRegister reg;
  obf::ObfProgram P;
  nlohmann::json aux;
  gf2::CosetInstance coset;  // challenger only
};

ProtectedProgram issue(const SchemeKey& k, int n_in, int n_out, int d, obf::Registry& registry, Rng& rng);

// Field widths of a protected program's input spec.
struct ProgramShape {
  int n_in = 0;
  int d = 0;
};
ProgramShape shape_of(const obf::ObfProgram& P);

// Coherent evaluation: measure P(x, 0, .) as a labelled function and rewind,
// apply H on every qubit, measure P(x, 1, .) and rewind, undo H. `reg` is
// replaced by the rewound state. Returns y0 xor y1, or nullopt when either
// branch measured bottom.
std::optional<uint64_t> try_protected_eval(const obf::ObfProgram& P, QuantumRegister& reg, uint64_t x, Rng& rng);
// Throws EvaluationFailure on a bottom branch.
uint64_t protected_eval(const obf::ObfProgram& P, QuantumRegister& reg, uint64_t x, Rng& rng);
// Eval^C(aux, z) with each circuit query answered by protected evaluation.
Answer protected_scheme_eval(const MalleablePuncturableScheme& scheme, const obf::ObfProgram& P,
                             const nlohmann::json& aux, QuantumRegister& reg, uint64_t z, Rng& rng);

// Operator supported on a set of basis states; zero elsewhere.
struct SupportedOperator {
  std::vector<uint64_t> support;  // ascending basis indices
  Matrix block;                   // restriction to the support
  Matrix dense(Eigen::Index dim) const;
  bool is_projector(double tol = 1e-9) const;
};

// Acceptance operator of honest protected evaluation on input x:
// sum over branch outcomes (y0, y1) with accept(y0 xor y1) of
// D0_{y0} H D1_{y1} H D0_{y0}, where D_b,y projects onto {v : P(x, b, v) = y}.
SupportedOperator evaluation_acceptance(const obf::ObfProgram& P, uint64_t x,
                                        const std::function<bool(uint64_t)>& accept);

}  // namespace cplab::protect
