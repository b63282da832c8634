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

#include "cplab/ace.hpp"

#include <algorithm>
#include <cmath>

#include "cplab/errors.hpp"
#include "cplab/gf2.hpp"
#include "cplab/resampler.hpp"

namespace cplab::ace {
namespace {

void check_message_bits(int n) {
  if (n < 1 || n > kMaxMessageBits) throw ParameterError("steg-ace: message bits must lie in [1, 16]");
}

void check_message(int n, uint64_t m) {
  if (m > low_mask(n)) throw DimensionMismatch("message wider than n bits");
}

// Literal loop is used when its expected cost stays below this many draws.
constexpr double kLiteralDrawBudget = double(1 << 22);

}  // namespace

Extractor::Extractor(BitString seed, int in_bits, int out_bits)
    : seed_(std::move(seed)), in_bits_(in_bits), out_bits_(out_bits) {
  if (in_bits < 1 || in_bits > 64 || out_bits < 1 || out_bits > 64) {
    throw ParameterError("extractor widths must lie in [1, 64]");
  }
  if (seed_.size() != in_bits + out_bits - 1) throw DimensionMismatch("Toeplitz seed has the wrong length");
  rows_.assign(static_cast<size_t>(out_bits), 0);
  for (int i = 0; i < out_bits; ++i) {
    for (int j = 0; j < in_bits; ++j) {
      if (seed_.get(i - j + in_bits - 1)) rows_[static_cast<size_t>(i)] |= uint64_t{1} << j;
    }
  }
}

Extractor Extractor::random(int in_bits, int out_bits, Rng& rng) {
  int len = in_bits + out_bits - 1;
  BitString s(len);
  for (int i = 0; i < len; ++i) s.set(i, rng.coin());
  return Extractor(std::move(s), in_bits, out_bits);
}

uint64_t Extractor::operator()(uint64_t sample) const {
  if (sample > low_mask(in_bits_)) throw DimensionMismatch("sample wider than the extractor input");
  uint64_t out = 0;
  for (size_t i = 0; i < rows_.size(); ++i) out |= static_cast<uint64_t>(parity(rows_[i] & sample)) << i;
  return out;
}

int default_extractor_input_bits(int n) { return std::min(64, 4 * n + 16); }

Predicate Predicate::never() {
  return {"FALSE", [](uint64_t) { return false; }};
}

Predicate Predicate::always() {
  return {"TRUE", [](uint64_t) { return true; }};
}

Predicate Predicate::point(uint64_t m_star) {
  return {"point:" + std::to_string(m_star), [m_star](uint64_t m) { return m == m_star; }};
}

Predicate Predicate::prefix(int b, int n) {
  if (b != 0 && b != 1) throw ParameterError("prefix bit must be 0 or 1");
  check_message_bits(n);
  return {"PRE" + std::to_string(b), [b, n](uint64_t m) { return static_cast<int>((m >> (n - 1)) & 1) != b; }};
}

AceSecretKey setup(int n, int security_bits, Rng& rng, int extractor_input_bits) {
  check_message_bits(n);
  int in = extractor_input_bits ? extractor_input_bits : default_extractor_input_bits(n);
  if (in < ciphertext_bits(n)) throw ParameterError("extractor input narrower than the ciphertext");
  AceSecretKey sk;
  sk.n = n;
  sk.k1 = prf::setup(security_bits, n, 3 * n, rng);
  sk.k2 = prf::setup(security_bits, 3 * n, n, rng);
  sk.ext = Extractor::random(in, ciphertext_bits(n), rng);
  return sk;
}

uint64_t encapsulation_of(const AceSecretKey& sk, uint64_t m) {
  check_message(sk.n, m);
  uint64_t alpha = prf::eval_u64(sk.k1, m);
  uint64_t beta = prf::eval_u64(sk.k2, alpha) ^ m;
  return pack_ciphertext(sk.n, alpha, beta);
}

EncapKey gen_ek(const AceSecretKey& sk, const Predicate& C, obf::Registry& registry, Rng& rng) {
  auto program = [k1 = sk.k1, k2 = sk.k2, C, n = sk.n](uint64_t m) -> obf::Output {
    if (C(m)) return std::nullopt;
    uint64_t alpha = prf::eval_u64(k1, m);
    uint64_t beta = prf::eval_u64(k2, alpha) ^ m;
    return pack_ciphertext(n, alpha, beta);
  };
  obf::InputSpec spec{{"m", sk.n}};
  return EncapKey{sk.n, registry.obfuscate(program, spec, "ace-enc:" + std::to_string(sk.n), rng), sk.ext};
}

DecapKey gen_dk(const AceSecretKey& sk, const Predicate& C, obf::Registry& registry, Rng& rng) {
  // m is recovered before the predicate check, since C is applied to it.
  auto program = [k1 = sk.k1, k2 = sk.k2, C, n = sk.n](uint64_t ct) -> obf::Output {
    uint64_t alpha = ct >> n;
    uint64_t beta = ct & low_mask(n);
    uint64_t m = prf::eval_u64(k2, alpha) ^ beta;
    if (C(m)) return std::nullopt;
    if (alpha != prf::eval_u64(k1, m)) return std::nullopt;
    return m;
  };
  obf::InputSpec spec{{"alpha", 3 * sk.n}, {"beta", sk.n}};
  return DecapKey{sk.n, registry.obfuscate(program, spec, "ace-dec:" + std::to_string(sk.n), rng), sk.ext};
}

std::optional<uint64_t> enc(const EncapKey& ek, uint64_t m) {
  check_message(ek.n, m);
  return ek.program(m);
}

std::optional<uint64_t> dec(const DecapKey& dk, uint64_t ct) {
  if (ct > low_mask(ciphertext_bits(dk.n))) throw DimensionMismatch("ciphertext wider than 4n bits");
  return dk.program(ct);
}

uint64_t support_size(const SampleSource& D) {
  if (D.kind() == SampleSource::Kind::explicit_dist) return D.distribution().size();
  return D.width() >= 64 ? UINT64_MAX : uint64_t{1} << D.width();
}

double preimage_weight(const Extractor& ext, const SampleSource& D, uint64_t y) {
  if (D.kind() == SampleSource::Kind::explicit_dist) {
    double q = 0.0;
    const auto& dist = D.distribution();
    for (size_t i = 0; i < dist.size(); ++i) {
      if (ext(dist.support()[i]) == y) q += dist.probs()[i];
    }
    return q;
  }
  // Uniform over w bits: count solutions with the high input bits forced to zero.
  int w = D.width();
  std::vector<uint64_t> rows = ext.rows();
  for (auto& r : rows) r &= low_mask(w);
  auto sol = gf2::solve(w, rows, y);
  if (!sol.consistent) return 0.0;
  return std::ldexp(1.0, sol.kernel.dim() - w);
}

namespace {

// Uniform draw from {s < 2^w : Ext(s) = y}; the set must be nonempty.
uint64_t uniform_preimage(const Extractor& ext, int w, uint64_t y, Rng& rng) {
  std::vector<uint64_t> rows = ext.rows();
  for (auto& r : rows) r &= low_mask(w);
  auto sol = gf2::solve(w, rows, y);
  return sol.particular ^ sol.kernel.random_element(rng).word();
}

uint64_t explicit_preimage(const Extractor& ext, const FiniteDistribution& dist, uint64_t y, double q, Rng& rng) {
  double u = rng.uniform() * q;
  double acc = 0.0;
  uint64_t last = 0;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (dist.probs()[i] <= 0.0 || ext(dist.support()[i]) != y) continue;
    acc += dist.probs()[i];
    last = dist.support()[i];
    if (u < acc) return last;
  }
  return last;
}

}  // namespace

StegResult steg_enc(const EncapKey& ek, uint64_t m, const SampleSource& D, double epsilon, Rng& rng,
                    const StegOptions& options) {
  if (D.width() > ek.ext.in_bits()) throw DimensionMismatch("sample width exceeds the extractor input");
  if (D.min_entropy() < 4.0 * ek.n - 1e-9) throw ParameterError("distribution min-entropy is below 4n");
  StegResult r;
  r.t_limit = options.t_limit ? options.t_limit : resample::truncated_limit(epsilon, support_size(D));
  auto ict = enc(ek, m);
  if (!ict) {
    r.status = StegStatus::punctured;
    return r;
  }
  StegStrategy strategy = options.strategy;
  double q = -1.0;
  if (strategy == StegStrategy::automatic) {
    q = preimage_weight(ek.ext, D, *ict);
    double expected = q > 0.0 ? std::min(static_cast<double>(r.t_limit), 1.0 / q) : static_cast<double>(r.t_limit);
    strategy = expected <= kLiteralDrawBudget ? StegStrategy::literal : StegStrategy::geometric;
  }
  if (strategy == StegStrategy::literal) {
    for (uint64_t cnt = 1; cnt <= r.t_limit; ++cnt) {
      uint64_t s = D.sample(rng);
      ++r.draws;
      if (ek.ext(s) == *ict) {
        r.sample = s;
        r.status = StegStatus::ok;
        return r;
      }
    }
    r.status = StegStatus::exhausted;
    return r;
  }
  if (q < 0.0) q = preimage_weight(ek.ext, D, *ict);
  uint64_t trials = resample::geometric_trials(q, rng);
  r.draws = trials;
  if (trials == 0 || trials > r.t_limit) {
    r.draws = r.t_limit;
    r.status = StegStatus::exhausted;
    return r;
  }
  r.sample = D.kind() == SampleSource::Kind::uniform ? uniform_preimage(ek.ext, D.width(), *ict, rng)
                                                     : explicit_preimage(ek.ext, D.distribution(), *ict, q, rng);
  r.status = StegStatus::ok;
  return r;
}

std::optional<uint64_t> steg_dec(const DecapKey& dk, uint64_t sample) {
  return dec(dk, dk.ext(sample));
}

}  // namespace cplab::ace
