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

#include "cplab/moe.hpp"

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab::protect {
namespace {

// Subspace and shift whose coset the side must name.
struct Target {
  gf2::Gf2Subspace space;
  gf2::Gf2Vector shift;
};

Target target_of(bool first, const gf2::CosetInstance& inst) {
  return first ? Target{inst.A, inst.a1} : Target{gf2::dual(inst.A), inst.a2};
}

double side_rate(MoeStrategy s, bool first, const gf2::CosetInstance& inst) {
  const Target tg = target_of(first, inst);
  const uint64_t want = tg.space.reduce(tg.shift.word());
  const uint64_t n = uint64_t{1} << inst.d;
  auto hits = [&](uint64_t u) { return tg.space.reduce(u) == want; };
  switch (s) {
    case MoeStrategy::computational:
    case MoeStrategy::hadamard: {
      auto reg = quantum::prepare_coset_state(inst.A, inst.a1, inst.a2);
      if (s == MoeStrategy::hadamard) reg = quantum::hadamard_all(reg);
      Eigen::VectorXd p = reg.probabilities();
      double total = 0.0;
      for (uint64_t u = 0; u < n; ++u) total += hits(u) ? p[static_cast<Eigen::Index>(u)] : 0.0;
      return total;
    }
    case MoeStrategy::guess_uniform: {
      uint64_t count = 0;
      for (uint64_t u = 0; u < n; ++u) count += hits(u);
      return static_cast<double>(count) / static_cast<double>(n);
    }
    case MoeStrategy::guess_outer: {
      auto elems = (first ? inst.outer_primal() : inst.outer_dual()).elements();
      uint64_t count = 0;
      for (uint64_t u : elems) count += hits(u);
      return static_cast<double>(count) / static_cast<double>(elems.size());
    }
  }
  return 0.0;
}

uint64_t canonical(const gf2::Gf2Subspace& space, uint64_t v) { return space.reduce(v); }

// Answers for each strategy once A is known.
MoeAnswer answer_for(MoeStrategy s, bool first) {
  switch (s) {
    case MoeStrategy::computational:
      return [](const gf2::Gf2Subspace& A, const MoePublic&, MoeShare& sh, Rng& rng) {
        uint64_t v = sh.reg ? quantum::measure_computational(*sh.reg, rng) : sh.words.at(0);
        return canonical(A, v);
      };
    case MoeStrategy::hadamard:
      return [](const gf2::Gf2Subspace& A, const MoePublic&, MoeShare& sh, Rng& rng) {
        uint64_t w = sh.reg ? quantum::measure_computational(quantum::hadamard_all(*sh.reg), rng) : sh.words.at(0);
        return canonical(gf2::dual(A), w);
      };
    case MoeStrategy::guess_uniform:
      return [first](const gf2::Gf2Subspace& A, const MoePublic& pub, MoeShare&, Rng& rng) {
        uint64_t u = rng.bits(pub.d);
        return canonical(first ? A : gf2::dual(A), u);
      };
    case MoeStrategy::guess_outer:
      return [first](const gf2::Gf2Subspace& A, const MoePublic& pub, MoeShare&, Rng& rng) {
        uint64_t u = first ? pub.B1.random_element(rng).word() ^ pub.t.word()
                           : gf2::dual(pub.B2).random_element(rng).word() ^ pub.t_prime.word();
        return canonical(first ? A : gf2::dual(A), u);
      };
  }
  throw ParameterError("unknown MoE strategy");
}

MoeAdversary built_in(std::string name, MoeStrategy s1, MoeStrategy s2, bool measure_in_split, double exponent) {
  MoeAdversary adv;
  adv.name = std::move(name);
  const bool register_to_first = s1 == MoeStrategy::computational || s1 == MoeStrategy::hadamard;
  adv.split = [register_to_first, measure_in_split, s1, s2](const QuantumRegister& reg, const MoePublic&, Rng& rng) {
    MoeShare holder, other;
    if (measure_in_split) {
      // A0 measures and forwards only the classical outcome.
      MoeStrategy s = register_to_first ? s1 : s2;
      QuantumRegister r = s == MoeStrategy::hadamard ? quantum::hadamard_all(reg) : reg;
      holder.words.push_back(quantum::measure_computational(r, rng));
    } else {
      holder.reg = reg;
    }
    return register_to_first ? std::pair{holder, other} : std::pair{other, holder};
  };
  adv.answer1 = answer_for(s1, true);
  adv.answer2 = answer_for(s2, false);
  adv.exact = [s1, s2](const gf2::CosetInstance& inst) { return moe_brute_force_rate(s1, s2, inst); };
  adv.closed_form = [exponent](int d) { return std::ldexp(1.0, -static_cast<int>(exponent * d)); };
  return adv;
}

}  // namespace

double moe_brute_force_rate(MoeStrategy first, MoeStrategy second, const gf2::CosetInstance& inst) {
  return side_rate(first, true, inst) * side_rate(second, false, inst);
}

GameResult run_moe_game(int d, const MoeAdversary& adversary, uint64_t trials, Rng& rng, const TrialSink& sink) {
  if (trials == 0) throw ParameterError("a game needs at least one trial");
  if (d < 4 || d % 4 != 0) throw ParameterError("protection-games: MoE needs d a positive multiple of 4");
  if (d > kMaxCosetDim) throw CapacityError("protection-games: MoE d must be at most 12");
  GameResult res{"moe", trials, 0, {0, 0}, {{"d", d}, {"adversary", adversary.name}, {"trials", trials}}, {}};
  for (uint64_t t = 0; t < trials; ++t) {
    gf2::CosetInstance inst = gf2::sample_coset_instance(d, rng);
    QuantumRegister reg = quantum::prepare_coset_state(inst.A, inst.a1, inst.a2);
    MoePublic pub{d, inst.B1, inst.B2, inst.t, inst.t_prime};
    auto [share1, share2] = adversary.split(reg, pub, rng);
    uint64_t v = adversary.answer1(inst.A, pub, share1, rng);
    uint64_t w = adversary.answer2(inst.A, pub, share2, rng);
    bool b1 = v == gf2::canonical_rep(inst.A, inst.a1).word();
    bool b2 = w == gf2::canonical_rep(gf2::dual(inst.A), inst.a2).word();
    bool ok = b1 && b2;
    res.successes += ok;
    res.side_successes[0] += b1;
    res.side_successes[1] += b2;
    if (sink) sink({t, ok, {b1, b2}, {{"v", v}, {"w", w}}});
  }
  if (adversary.closed_form) res.summary["analytic_rate"] = adversary.closed_form(d);
  return res;
}

std::vector<std::string> moe_adversary_names() {
  return {"split-basis", "split-hadamard", "split-state", "split-state-hadamard"};
}

MoeAdversary make_moe_adversary(const std::string& name) {
  using S = MoeStrategy;
  if (name == "split-basis") return built_in(name, S::computational, S::guess_uniform, true, 0.5);
  if (name == "split-hadamard") return built_in(name, S::guess_uniform, S::hadamard, true, 0.5);
  if (name == "split-state") return built_in(name, S::computational, S::guess_outer, false, 0.25);
  if (name == "split-state-hadamard") return built_in(name, S::guess_outer, S::hadamard, false, 0.25);
  throw ParameterError("unknown MoE adversary '" + name + "'");
}

}  // namespace cplab::protect
