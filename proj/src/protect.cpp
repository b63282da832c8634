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

#include "cplab/protect.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab::protect {
namespace {

constexpr int kSecurityBits = 128;

void check_d(int d) {
  if (d < 4 || d % 4 != 0) throw ParameterError("protection-games: d must be a positive multiple of 4");
  if (d > kMaxCosetDim) throw CapacityError("protection-games: d must be at most 12");
}

// Label of every basis state v under P(x, b, .), bottom mapped to kBottomLabel.
std::vector<uint64_t> branch_labels(const obf::ObfProgram& P, const ProgramShape& s, uint64_t x, uint64_t b) {
  std::vector<uint64_t> labels(size_t{1} << s.d);
  for (uint64_t v = 0; v < labels.size(); ++v) {
    obf::Output y = P.eval({x, b, v});
    labels[v] = y ? *y : kBottomLabel;
  }
  return labels;
}

std::map<uint64_t, std::vector<uint64_t>> group_by_label(const std::vector<uint64_t>& labels) {
  std::map<uint64_t, std::vector<uint64_t>> groups;
  for (uint64_t v = 0; v < labels.size(); ++v) groups[labels[v]].push_back(v);
  return groups;
}

}  // namespace

obf::ObfProgram membership_program(const gf2::Gf2Coset& primal, const gf2::Gf2Coset& dual, obf::Registry& registry,
                                   Rng& rng) {
  if (primal.ambient_dim() != dual.ambient_dim()) throw DimensionMismatch("primal and dual cosets differ in dimension");
  const int d = primal.ambient_dim();
  auto fn = [primal, dual](uint64_t packed) -> obf::Output {
    const int dd = primal.ambient_dim();
    const uint64_t b = packed >> dd;
    const uint64_t v = packed & low_mask(dd);
    return (b == 0 ? primal.contains_word(v) : dual.contains_word(v)) ? 1 : 0;
  };
  return registry.obfuscate(fn, obf::InputSpec{{"b", 1}, {"v", d}}, "protect:M", rng);
}

GenStateResult gen_state(int d, obf::Registry& registry, Rng& rng) {
  check_d(d);
  gf2::CosetInstance inst = gf2::sample_coset_instance(d, rng);
  QuantumRegister reg = quantum::prepare_coset_state(inst.A, inst.a1, inst.a2);
  obf::ObfProgram pp = membership_program(inst.primal(), inst.dual_coset(), registry, rng);
  return {std::move(pp), std::move(reg), std::move(inst)};
}

ProtectResult protect(const obf::ObfProgram& pp, const SchemeKey& k, int n_in, int n_out, obf::Registry& registry,
                      Rng& rng) {
  const auto& mfields = pp.input_spec().fields();
  if (mfields.size() != 2 || mfields[0].bits != 1) throw ParameterError("pp is not a membership program");
  const int d = mfields[1].bits;
  if (n_in < 1 || d + 1 + n_in > 63) throw CapacityError("protection-games: x, b and v must fit in 63 bits");
  if (n_out < 1 || n_out > kMaxOutputBits) throw CapacityError("protection-games: output bits must lie in [1, 62]");
  prf::PrfKey K = prf::setup(kSecurityBits, n_in, n_out, rng);
  Circuit C = k.C;
  auto fn = [pp, C, K, d](uint64_t packed) -> obf::Output {
    const uint64_t v = packed & low_mask(d);
    const uint64_t b = (packed >> d) & 1;
    const uint64_t x = packed >> (d + 1);
    if (pp.eval({b, v}) != obf::Output{1}) return std::nullopt;
    const uint64_t mask = prf::eval_u64(K, x);
    return b == 0 ? C(x) ^ mask : mask;
  };
  obf::ObfProgram P = registry.obfuscate(fn, obf::InputSpec{{"x", n_in}, {"b", 1}, {"v", d}}, "protect:P", rng);
  return {std::move(P), k.aux, std::move(K)};
}

ProtectedProgram issue(const SchemeKey& k, int n_in, int n_out, int d, obf::Registry& registry, Rng& rng) {
  GenStateResult g = gen_state(d, registry, rng);
  ProtectResult p = protect(g.pp, k, n_in, n_out, registry, rng);
  return {std::move(g.pp), std::move(g.reg), std::move(p.P), std::move(p.aux), std::move(g.secret)};
}

ProgramShape shape_of(const obf::ObfProgram& P) {
  const auto& f = P.input_spec().fields();
  if (f.size() != 3 || f[1].bits != 1) throw ParameterError("program is not a protected program");
  return {f[0].bits, f[2].bits};
}

std::optional<uint64_t> try_protected_eval(const obf::ObfProgram& P, QuantumRegister& reg, uint64_t x, Rng& rng) {
  const ProgramShape s = shape_of(P);
  if (reg.num_qubits() != s.d) throw DimensionMismatch("register width differs from the program's v field");
  if (x > low_mask(s.n_in)) throw DimensionMismatch("input wider than the program's x field");
  auto first = quantum::measure_function_and_rewind(reg, branch_labels(P, s, x, 0), rng);
  QuantumRegister h = quantum::hadamard_all(first.rewound);
  auto second = quantum::measure_function_and_rewind(h, branch_labels(P, s, x, 1), rng);
  reg = quantum::hadamard_all(second.rewound);
  if (first.label == kBottomLabel || second.label == kBottomLabel) return std::nullopt;
  return first.label ^ second.label;
}

uint64_t protected_eval(const obf::ObfProgram& P, QuantumRegister& reg, uint64_t x, Rng& rng) {
  auto y = try_protected_eval(P, reg, x, rng);
  if (!y) throw EvaluationFailure("protected evaluation measured a bottom branch");
  return *y;
}

Answer protected_scheme_eval(const MalleablePuncturableScheme& scheme, const obf::ObfProgram& P,
                             const nlohmann::json& aux, QuantumRegister& reg, uint64_t z, Rng& rng) {
  return scheme.eval(aux, z, [&](uint64_t q) { return try_protected_eval(P, reg, q, rng); });
}

Matrix SupportedOperator::dense(Eigen::Index dim) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < support.size(); ++i) {
    for (size_t j = 0; j < support.size(); ++j) {
      out(static_cast<Eigen::Index>(support[i]), static_cast<Eigen::Index>(support[j])) =
          block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

bool SupportedOperator::is_projector(double tol) const {
  if (support.empty()) return true;
  return (block * block - block).norm() <= tol && (block - block.adjoint()).norm() <= tol;
}

SupportedOperator evaluation_acceptance(const obf::ObfProgram& P, uint64_t x,
                                        const std::function<bool(uint64_t)>& accept) {
  const ProgramShape s = shape_of(P);
  const size_t n = size_t{1} << s.d;
  auto groups0 = group_by_label(branch_labels(P, s, x, 0));
  auto groups1 = group_by_label(branch_labels(P, s, x, 1));
  groups0.erase(kBottomLabel);
  groups1.erase(kBottomLabel);

  // H D1_y1 H has entry (v, v') = f(v xor v') / N with f the Walsh transform
  // of the indicator of the y1 preimage.
  std::map<uint64_t, std::vector<double>> spectra;
  for (const auto& [y1, members] : groups1) {
    std::vector<double> f(n, 0.0);
    for (uint64_t w : members) f[w] = 1.0;
    quantum::walsh_hadamard(std::span<double>(f));
    for (double& e : f) e /= static_cast<double>(n);
    spectra.emplace(y1, std::move(f));
  }

  // Blocks for different y0 act on disjoint supports.
  std::vector<std::pair<std::vector<uint64_t>, std::vector<double>>> parts;
  for (const auto& [y0, members] : groups0) {
    std::vector<double> g(n, 0.0);
    bool any = false;
    for (const auto& [y1, f] : spectra) {
      if (!accept(y0 ^ y1)) continue;
      any = true;
      for (size_t u = 0; u < n; ++u) g[u] += f[u];
    }
    if (any) parts.emplace_back(members, std::move(g));
  }

  SupportedOperator op;
  for (const auto& part : parts) op.support.insert(op.support.end(), part.first.begin(), part.first.end());
  std::vector<size_t> order(op.support.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<uint64_t> unsorted = op.support;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return unsorted[a] < unsorted[b]; });
  std::vector<size_t> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    op.support[i] = unsorted[order[i]];
    pos[order[i]] = i;
  }
  const auto k = static_cast<Eigen::Index>(op.support.size());
  op.block = Matrix::Zero(k, k);
  size_t offset = 0;
  for (const auto& [members, g] : parts) {
    for (size_t i = 0; i < members.size(); ++i) {
      for (size_t j = 0; j < members.size(); ++j) {
        op.block(static_cast<Eigen::Index>(pos[offset + i]), static_cast<Eigen::Index>(pos[offset + j])) =
            g[members[i] ^ members[j]];
      }
    }
    offset += members.size();
  }
  return op;
}

}  // namespace cplab::protect
