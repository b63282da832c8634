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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cplab/ace.hpp"
#include "cplab/cli.hpp"
#include "cplab/errors.hpp"
#include "cplab/games.hpp"
#include "cplab/moe.hpp"
#include "cplab/pirates.hpp"
#include "cplab/prf.hpp"
#include "cplab/resampler.hpp"
#include "cplab/scheme.hpp"

namespace py = pybind11;
using namespace cplab;

namespace {

// Game results cross the boundary as JSON text; the package decodes them.
std::string result_json(const protect::GameResult& r) {
  nlohmann::json j{{"game", r.game},
                   {"trials", r.trials},
                   {"successes", r.successes},
                   {"rate", r.rate()},
                   {"ci_low", r.ci().low},
                   {"ci_high", r.ci().high},
                   {"side_successes", r.side_successes},
                   {"params", r.params},
                   {"summary", r.summary}};
  return j.dump();
}

FiniteDistribution make_dist(const std::vector<uint64_t>& values, const std::vector<double>& probs) {
  return FiniteDistribution(values, probs);
}

resample::Fn table_fn(const FiniteDistribution& D, std::vector<uint64_t> labels) {
  if (labels.size() != D.size()) throw DimensionMismatch("one label per support point is required");
  return [&D, labels = std::move(labels)](uint64_t s) { return labels[D.index_of(s)]; };
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"cplab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_cplab, m) {
  m.doc() = "Bindings for the cplab copy-protection toolkit";

  // Translators run newest first, so the base class goes first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());

  m.def("run_cli", &run_cli, py::arg("args"), "Run the command-line tool in process; returns (code, stdout, stderr).");

  m.def("moe_adversary_names", &protect::moe_adversary_names);
  m.def("pirate_names", &protect::pirate_names);
  m.def("scheme_names", &protect::scheme_names);

  m.def(
      "moe_game",
      [](int d, const std::string& adversary, uint64_t trials, uint64_t seed) {
        Rng rng(seed);
        return result_json(protect::run_moe_game(d, protect::make_moe_adversary(adversary), trials, rng));
      },
      py::arg("d"), py::arg("adversary"), py::arg("trials"), py::arg("seed"));

  m.def(
      "copy_protection_game",
      [](int n_in, int n_out, int d, const std::string& pirate, uint64_t trials, uint64_t seed) {
        Rng rng(seed);
        protect::PrfEvalScheme scheme(n_in, n_out);
        return result_json(protect::run_copy_protection_game(scheme, protect::make_pirate(pirate), d, trials, rng));
      },
      py::arg("n_in"), py::arg("n_out"), py::arg("d"), py::arg("pirate"), py::arg("trials"), py::arg("seed"));

  m.def(
      "strong_antipiracy_game",
      [](int n_in, int n_out, int d, const std::string& pirate, double gamma, uint64_t trials, uint64_t seed) {
        Rng rng(seed);
        protect::PrfEvalScheme scheme(n_in, n_out);
        return result_json(
            protect::run_strong_antipiracy_game(scheme, protect::make_pirate(pirate), d, gamma, trials, rng));
      },
      py::arg("n_in"), py::arg("n_out"), py::arg("d"), py::arg("pirate"), py::arg("gamma"), py::arg("trials"),
      py::arg("seed"));

  m.def("truncated_limit", &resample::truncated_limit, py::arg("epsilon"), py::arg("support_size"));

  m.def(
      "resample_law",
      [](const std::vector<uint64_t>& values, const std::vector<double>& probs, std::vector<uint64_t> labels,
         std::optional<uint64_t> t_limit) {
        const FiniteDistribution D = make_dist(values, probs);
        const resample::Fn f = table_fn(D, std::move(labels));
        const auto law = t_limit ? resample::truncated_law(D, f, *t_limit) : resample::infinite_law(D, f);
        return std::make_tuple(law.mass, law.bottom, resample::exact_tv_distance(D, law));
      },
      py::arg("values"), py::arg("probs"), py::arg("labels"), py::arg("t_limit") = std::nullopt,
      "Exact output law as (mass, bottom, tv_to_D); infinite resampling when t_limit is None.");

  m.def(
      "steg_roundtrip",
      [](int n, const std::string& dist, double epsilon, uint64_t msg, uint64_t trials, uint64_t seed) {
        Rng rng(seed);
        const SampleSource D = SampleSource::parse(dist);
        auto sk = ace::setup(n, prf::kDefaultSecurityBits, rng, D.width());
        obf::Registry registry;
        auto ek = ace::gen_ek(sk, ace::Predicate::never(), registry, rng);
        auto dk = ace::gen_dk(sk, ace::Predicate::never(), registry, rng);
        uint64_t ok = 0;
        for (uint64_t t = 0; t < trials; ++t) {
          auto r = ace::steg_enc(ek, msg, D, epsilon, rng);
          ok += r.sample && ace::steg_dec(dk, *r.sample) == msg;
        }
        return ok;
      },
      py::arg("n"), py::arg("dist"), py::arg("epsilon"), py::arg("msg"), py::arg("trials"), py::arg("seed"),
      "Number of StegEnc/StegDec roundtrips that recover msg.");

  m.def(
      "punctured_prf_agreement",
      [](int n, const std::vector<uint64_t>& punctured, uint64_t seed) {
        Rng rng(seed);
        auto key = prf::setup(prf::kDefaultSecurityBits, n, 32, rng);
        auto pk = prf::puncture(key, punctured);
        std::vector<std::optional<uint64_t>> got;
        std::vector<uint64_t> want;
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
          got.push_back(prf::punctured_eval_u64(pk, x));
          want.push_back(prf::eval_u64(key, x));
        }
        return std::make_pair(got, want);
      },
      py::arg("n"), py::arg("punctured"), py::arg("seed"),
      "Punctured and full evaluations over the whole domain (n <= 16).");
}
