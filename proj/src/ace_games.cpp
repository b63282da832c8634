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

#include "cplab/ace_games.hpp"

#include <algorithm>

#include "cplab/errors.hpp"

namespace cplab::ace {
namespace {

constexpr int kGameSecurityBits = 128;

bool decap_consistent(const std::optional<uint64_t>& m1, const std::optional<uint64_t>& m2, const Predicate& C) {
  if (m1 == m2) return true;
  if (m1 && C(*m1)) return true;
  // dk_C rejects exactly the strings whose message C punctures.
  return !m1 && m2 && C(*m2);
}

void check_challenge_messages(int n, const Predicate& C1, const Predicate& C2, const std::vector<uint64_t>& ms) {
  for (uint64_t m : ms) {
    if (m > low_mask(n)) throw DimensionMismatch("challenge message wider than n bits");
    if (!C1(m) || !C2(m)) throw ParameterError("challenge messages must be punctured by both predicates");
  }
}

}  // namespace

CorrectnessReport check_correctness(const AceSecretKey& sk, const Predicate& C, const Predicate& C_prime,
                                    obf::Registry& registry, Rng& rng, std::optional<uint64_t> probes) {
  const int n = sk.n;
  if (!probes && n > 5) throw CapacityError("exhaustive correctness checks are limited to n <= 5");
  Predicate none = Predicate::never();
  EncapKey ek_c = gen_ek(sk, C, registry, rng);
  EncapKey ek_cp = gen_ek(sk, C_prime, registry, rng);
  EncapKey ek_false = gen_ek(sk, none, registry, rng);
  DecapKey dk_c = gen_dk(sk, C, registry, rng);
  DecapKey dk_false = gen_dk(sk, none, registry, rng);

  CorrectnessReport r;
  auto check_message = [&](uint64_t m) {
    ++r.messages_checked;
    if (!C(m) && !C_prime(m)) {
      auto ct = enc(ek_cp, m);
      if (!ct || dec(dk_c, *ct) != m) ++r.decapsulation;
    }
    if (!C(m) && enc(ek_c, m) != enc(ek_false, m)) ++r.constrained_encap;
    if (dec(dk_false, encapsulation_of(sk, m)) != m) ++r.unique;
  };
  auto check_string = [&](uint64_t str) {
    ++r.strings_checked;
    auto m1 = dec(dk_c, str);
    auto m2 = dec(dk_false, str);
    if (m1 && C(*m1)) ++r.safety;
    if (!decap_consistent(m1, m2, C)) ++r.constrained_decap;
    if (m2 && str != encapsulation_of(sk, *m2)) ++r.unique;
  };

  if (!probes) {
    for (uint64_t m = 0; m <= low_mask(n); ++m) check_message(m);
    for (uint64_t s = 0; s <= low_mask(ciphertext_bits(n)); ++s) check_string(s);
  } else {
    for (uint64_t i = 0; i < *probes; ++i) check_message(rng.bits(n));
    for (uint64_t i = 0; i < *probes; ++i) {
      // Half the probes are honest encapsulations so acceptance paths are hit.
      uint64_t s = (i & 1) ? rng.bits(ciphertext_bits(n)) : encapsulation_of(sk, rng.bits(n));
      check_string(s);
    }
  }
  return r;
}

GameStats puncture_hiding_game(int n, const Predicate& C, const Predicate& C0, const Predicate& C1,
                               const PunctureHidingDistinguisher& adversary, uint64_t trials, Rng& rng) {
  for (uint64_t m = 0; m <= low_mask(n); ++m) {
    if (C0(m) != C1(m) && !C(m)) {
      throw ParameterError("C must puncture every message where C0 and C1 differ");
    }
  }
  GameStats stats;
  for (uint64_t t = 0; t < trials; ++t) {
    obf::Registry registry;
    AceSecretKey sk = setup(n, kGameSecurityBits, rng);
    EncapKey ek = gen_ek(sk, C, registry, rng);
    DecapKey dk0 = gen_dk(sk, C0, registry, rng);
    DecapKey dk1 = gen_dk(sk, C1, registry, rng);
    int b = rng.coin() ? 1 : 0;
    PunctureHidingView view{n, &ek, b ? &dk1 : &dk0};
    stats.wins += adversary(view, rng) == b;
    ++stats.trials;
  }
  return stats;
}

GameStats pr_ciphertext_game(int n, const Predicate& C1, const Predicate& C2, const std::vector<uint64_t>& messages,
                             const CiphertextDistinguisher& adversary, uint64_t trials, Rng& rng) {
  check_challenge_messages(n, C1, C2, messages);
  GameStats stats;
  for (uint64_t t = 0; t < trials; ++t) {
    obf::Registry registry;
    AceSecretKey sk = setup(n, kGameSecurityBits, rng);
    EncapKey ek = gen_ek(sk, Predicate::never(), registry, rng);
    EncapKey ek_p = gen_ek(sk, C1, registry, rng);
    DecapKey dk_p = gen_dk(sk, C2, registry, rng);
    CiphertextView view{n, &ek_p, &dk_p, {}, nullptr};
    int b = rng.coin() ? 1 : 0;
    for (uint64_t m : messages) {
      auto ct = enc(ek, m);
      uint64_t r = rng.bits(ciphertext_bits(n));
      view.challenge.push_back(b ? std::optional<uint64_t>(r) : ct);
    }
    stats.wins += adversary(view, rng) == b;
    ++stats.trials;
  }
  return stats;
}

GameStats steg_ciphertext_game(int n, const Predicate& C1, const Predicate& C2,
                               const std::vector<uint64_t>& messages, const SampleSource& D, double epsilon,
                               const CiphertextDistinguisher& adversary, uint64_t trials, Rng& rng) {
  check_challenge_messages(n, C1, C2, messages);
  GameStats stats;
  for (uint64_t t = 0; t < trials; ++t) {
    obf::Registry registry;
    AceSecretKey sk = setup(n, kGameSecurityBits, rng, std::max(D.width(), default_extractor_input_bits(n)));
    EncapKey ek = gen_ek(sk, Predicate::never(), registry, rng);
    EncapKey ek_p = gen_ek(sk, C1, registry, rng);
    DecapKey dk_p = gen_dk(sk, C2, registry, rng);
    CiphertextView view{n, &ek_p, &dk_p, {}, &D};
    int b = rng.coin() ? 1 : 0;
    for (uint64_t m : messages) {
      auto ct = steg_enc(ek, m, D, epsilon, rng).sample;
      uint64_t s = D.sample(rng);
      view.challenge.push_back(b ? std::optional<uint64_t>(s) : ct);
    }
    stats.wins += adversary(view, rng) == b;
    ++stats.trials;
  }
  return stats;
}

namespace distinguishers {

PunctureHidingDistinguisher random_guess() {
  return [](const PunctureHidingView&, Rng& rng) { return rng.coin() ? 1 : 0; };
}

PunctureHidingDistinguisher reject_rate(uint64_t probes) {
  return [probes](const PunctureHidingView& v, Rng& rng) {
    uint64_t rejected = 0;
    for (uint64_t i = 0; i < probes; ++i) {
      auto ct = enc(*v.ek, rng.bits(v.n));
      if (ct && !dec(*v.dk, *ct)) ++rejected;
    }
    return rejected > 0 ? 1 : 0;
  };
}

CiphertextDistinguisher random_guess_ct() {
  return [](const CiphertextView&, Rng& rng) { return rng.coin() ? 1 : 0; };
}

CiphertextDistinguisher decap_probe() {
  return [](const CiphertextView& v, Rng&) {
    for (const auto& c : v.challenge) {
      if (!c) continue;
      auto m = v.source ? steg_dec(*v.dk, *c) : dec(*v.dk, *c);
      if (m) return 1;
    }
    return 0;
  };
}

CiphertextDistinguisher low_bit() {
  return [](const CiphertextView& v, Rng&) {
    return !v.challenge.empty() && v.challenge[0] ? static_cast<int>(*v.challenge[0] & 1) : 0;
  };
}

}  // namespace distinguishers

}  // namespace cplab::ace
