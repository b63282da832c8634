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

#include "cplab/hybrids.hpp"

#include <array>

#include "cplab/ace.hpp"
#include "cplab/bits.hpp"
#include "cplab/errors.hpp"
#include "cplab/gf2.hpp"
#include "cplab/hash.hpp"
#include "cplab/prf.hpp"
#include "cplab/protect.hpp"

namespace cplab::protect {
namespace {

constexpr int kSecurityBits = 128;
constexpr int kToyOutputBits = 8;

// G: r -> seed-length pad.
prf::Seed expand(uint64_t r, size_t length) {
  static constexpr std::array<uint8_t, 9> kLabel{'h', 'y', 'b', '-', 'p', 'r', 'g', ':', 0};
  std::array<uint8_t, 8> in{};
  for (int i = 0; i < 8; ++i) in[i] = static_cast<uint8_t>(r >> (56 - 8 * i));
  Digest h = sha256(kLabel, in);
  if (length > h.size()) throw CapacityError("protection-games: PRG output limited to 32 bytes");
  return prf::Seed(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(length));
}

prf::Seed xor_seed(const prf::Seed& a, const prf::Seed& b) {
  prf::Seed out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

}  // namespace

HybridReport check_pair(const HybridPair& pair) {
  return {pair.name, pair.expect_equivalent, obf::check_equivalence(pair.left, pair.right)};
}

HybridPair membership_pair(int d, obf::Registry& registry, Rng& rng) {
  gf2::CosetInstance inst = gf2::sample_coset_instance(d, rng);
  obf::ObfProgram m0 = membership_program(inst.primal(), inst.dual_coset(), registry, rng);
  obf::ObfProgram m1 = membership_program(inst.outer_primal(), inst.outer_dual(), registry, rng);
  return {"membership-M0-vs-M1", m0, m1, false};
}

HybridPair protect_decap_pair(int n, int d, bool puncture_everywhere, obf::Registry& registry, Rng& rng) {
  if (n < 2) throw ParameterError("protection-games: toy payload needs at least 2 bits");
  const int x_bits = ace::ciphertext_bits(n);
  GenStateResult g = gen_state(d, registry, rng);
  // C is a standalone PRF; its key seed plays the role of the circuit C*.
  prf::PrfKey c_key = prf::setup(kSecurityBits, x_bits, kToyOutputBits, rng);
  SchemeKey k{[c_key](uint64_t x) { return prf::eval_u64(c_key, x); }, nlohmann::json::object(),
              [](uint64_t x) { return x; }};
  ProtectResult p = protect::protect(g.pp, k, x_bits, kToyOutputBits, registry, rng);

  ace::AceSecretKey sk = ace::setup(n, kSecurityBits, rng);
  ace::DecapKey dk = ace::gen_dk(sk, puncture_everywhere ? ace::Predicate::always() : ace::Predicate::never(),
                                 registry, rng);
  const int z_bits = n - 1;
  ace::Extractor ext = ace::Extractor::random(d, z_bits, rng);
  const size_t seed_len = c_key.root_seed().size();
  const prf::Seed ct1 = xor_seed(c_key.root_seed(), expand(rng.bits(z_bits), seed_len));
  const prf::Seed ct2 = xor_seed(p.K.root_seed(), expand(rng.bits(z_bits), seed_len));
  const gf2::Gf2Subspace A = g.secret.A;
  const gf2::Gf2Subspace A_perp = gf2::dual(A);

  auto modified = [=, pp = g.pp, K = p.K](uint64_t packed) -> obf::Output {
    const uint64_t v = packed & low_mask(d);
    const uint64_t b = (packed >> d) & 1;
    const uint64_t x = packed >> (d + 1);
    if (pp.eval({b, v}) != obf::Output{1}) return std::nullopt;
    const uint64_t xq = k.q_rel(x);
    const std::optional<uint64_t> pl = ace::dec(dk, xq);
    const uint64_t t = pl ? (*pl >> z_bits) & 1 : 0;
    if (!pl || t != b) {
      const uint64_t mask = prf::eval_u64(K, x);
      return b == 0 ? k.C(x) ^ mask : mask;
    }
    const uint64_t z = *pl & low_mask(z_bits);
    const uint64_t a = t == 0 ? A.reduce(v) : A_perp.reduce(v);
    const uint64_t r = ext(a) ^ z;
    if (t == 0) {
      prf::PrfKey c_prime(xor_seed(ct1, expand(r, seed_len)), x_bits, kToyOutputBits);
      return prf::eval_u64(c_prime, x) ^ prf::eval_u64(K, x);
    }
    prf::PrfKey k_prime(xor_seed(ct2, expand(r, seed_len)), x_bits, kToyOutputBits);
    return prf::eval_u64(k_prime, x);
  };
  obf::ObfProgram p1 = registry.obfuscate(modified, p.P.input_spec(), p.P.size_pad(), rng);
  return {puncture_everywhere ? "protect-P-vs-P1-dk-punctured-everywhere" : "protect-P-vs-P1-dk-unpunctured",
          p.P, p1, puncture_everywhere};
}

HybridPair ace_encap_pair(int n, bool predicate_covers, obf::Registry& registry, Rng& rng) {
  ace::AceSecretKey sk = ace::setup(n, kSecurityBits, rng);
  const uint64_t m_star = rng.bits(n);
  const ace::Predicate c1 = predicate_covers ? ace::Predicate::point(m_star) : ace::Predicate::never();
  ace::EncapKey ek = ace::gen_ek(sk, c1, registry, rng);
  const prf::PuncturedPrfKey k1p = prf::puncture(sk.k1, {m_star});
  auto punctured = [k1p, k2 = sk.k2, c1, n](uint64_t m) -> obf::Output {
    if (c1(m)) return std::nullopt;
    // Bottom where the punctured key cannot evaluate.
    const auto alpha = prf::punctured_eval_u64(k1p, m);
    if (!alpha) return std::nullopt;
    return ace::pack_ciphertext(n, *alpha, prf::eval_u64(k2, *alpha) ^ m);
  };
  obf::ObfProgram right = registry.obfuscate(punctured, ek.program.input_spec(), ek.program.size_pad(), rng);
  return {predicate_covers ? "ace-Penc-vs-Penc-punctured" : "ace-Penc-vs-Penc-punctured-no-predicate", ek.program,
          right, predicate_covers};
}

HybridPair ace_decap_pair(int n, bool predicate_covers, obf::Registry& registry, Rng& rng) {
  ace::AceSecretKey sk = ace::setup(n, kSecurityBits, rng);
  const uint64_t m_star = rng.bits(n);
  const ace::Predicate c2 = predicate_covers ? ace::Predicate::point(m_star) : ace::Predicate::never();
  ace::DecapKey dk = ace::gen_dk(sk, c2, registry, rng);
  const prf::PuncturedPrfKey k1p = prf::puncture(sk.k1, {m_star});
  auto punctured = [k1p, k2 = sk.k2, c2, n](uint64_t ct) -> obf::Output {
    const uint64_t alpha = ct >> n;
    const uint64_t m = prf::eval_u64(k2, alpha) ^ (ct & low_mask(n));
    if (c2(m)) return std::nullopt;
    // A punctured evaluation that fails counts as a mismatch.
    const auto expected = prf::punctured_eval_u64(k1p, m);
    if (!expected || alpha != *expected) return std::nullopt;
    return m;
  };
  obf::ObfProgram right = registry.obfuscate(punctured, dk.program.input_spec(), dk.program.size_pad(), rng);
  return {predicate_covers ? "ace-Pdec-vs-Pdec-punctured" : "ace-Pdec-vs-Pdec-punctured-no-predicate", dk.program,
          right, predicate_covers};
}

}  // namespace cplab::protect
