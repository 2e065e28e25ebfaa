// Copyright 2026 The fockretro Authors
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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fockretro/classical.hpp"
#include "fockretro/density.hpp"
#include "fockretro/errors.hpp"
#include "fockretro/linopt.hpp"
#include "fockretro/report.hpp"
#include "fockretro/retrodict.hpp"
#include "fockretro/scenario.hpp"
#include "test_support.hpp"

namespace {

using namespace fockretro;
using fockretro::testing::kI;
using fockretro::testing::TwoSourceParams;

const Occupation kPsi0{1, 1, 0, 0};

// Largest observed error against the stated tolerance.
struct Check {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  void near(double got, double want, double tol) {
    const double d = std::abs(got - want);
    worst = std::max(worst, d);
    if (!(d <= tol)) ok = false;
  }
  void below(double value, double bound) {
    worst = std::max(worst, value);
    if (!(value < bound)) ok = false;
  }
  void expect(bool condition, const std::string& why) {
    if (!condition) {
      ok = false;
      if (note.empty()) note = why;
    }
  }
};

// Random two-source parameters with arbitrary element phases: each splitter
// gets its own transmission phase, and the reflection phase follows from
// unitarity of the symmetric form.
TwoSourceParams random_phased(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::bernoulli_distribution sign(0.5);
  auto draw = [&](Complex& t, Complex& r) {
    const double tt = unit(rng);
    const double phase = angle(rng);
    const double turn = sign(rng) ? std::numbers::pi / 2 : -std::numbers::pi / 2;
    t = std::polar(std::sqrt(tt), phase);
    r = std::polar(std::sqrt(1 - tt), phase + turn);
  };
  TwoSourceParams p{};
  draw(p.t_a, p.r_a);
  draw(p.t_b, p.r_b);
  return p;
}

StateVector psi2_of(const TwoSourceParams& p) {
  return run_circuit(fockretro::testing::two_source_circuit(p), StateVector::basis_state(kPsi0));
}

std::vector<History> labeled(const StateVector& s) {
  auto h = enumerate_histories(s);
  label_two_source_histories(h);
  return h;
}

double intensity_in(const Report& r, const std::string& title, Eigen::Index mode) {
  for (const auto& t : r.intensity_tables)
    if (t.title == title) return t.intensities(mode);
  return std::nan("");
}

// 1. Single photon at a 50:50 splitter.
Check single_photon() {
  Check c;
  const auto r = run_scenario(builtin_scenario("single-photon"));
  c.expect(r.histories.size() == 2, "expected two histories");
  for (const auto& h : r.histories) c.near(h.probability, 0.5, 1e-12);
  c.near(r.count_distributions.at(0).at(1), 0.5, 1e-12);  // D
  c.near(r.count_distributions.at(1).at(1), 0.5, 1e-12);  // C
  return c;
}

// 2. Seven histories with the hand-written Psi(2) moduli.
Check psi2_structure() {
  Check c;
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 20; ++k) {
    const auto p = random_phased(rng);
    const auto got = psi2_of(p);
    const auto want = fockretro::testing::two_source_psi2(p);
    const auto h = labeled(got);
    c.expect(h.size() == 7, "history count != 7");
    for (const auto& hist : h) {
      c.expect(hist.label.has_value(), "unlabeled history");
      c.near(hist.probability, std::norm(want.amplitude(hist.outcome)), 1e-12);
    }
    for (const auto& [occ, amp] : want) c.expect(got.amplitude(occ) != Complex(0.0), "missing term");
  }
  return c;
}

// 3. Two photons into the exact 50:50 splitter.
Check bunching() {
  Check c;
  const double s = 1.0 / std::numbers::sqrt2;
  const Circuit bs(2, {BeamSplitter::symmetric(s, kI * s, 0, 1)});
  const auto out = run_circuit(bs, StateVector::basis_state(Occupation{1, 1}));
  const double coincidence = std::norm(out.amplitude(Occupation{1, 1}));
  c.below(coincidence, 1e-24);
  c.near(std::norm(out.amplitude(Occupation{2, 0})), 0.5, 1e-12);
  c.near(std::norm(out.amplitude(Occupation{0, 2})), 0.5, 1e-12);
  return c;
}

// 4. Photon-count distribution on detector 1.
Check count_distribution_closed_form() {
  Check c;
  std::mt19937_64 rng(1004);
  for (int k = 0; k < 50; ++k) {
    const auto p = random_phased(rng);
    const auto dist = count_distribution(psi2_of(p), 0);
    c.expect(dist.size() == 3, "expected P0..P2");
    c.near(dist[0], (1 + std::norm(p.r_a * p.r_b)) / 2, 1e-12);
    c.near(dist[1], (std::norm(p.t_a * p.r_b) + std::norm(p.r_a * p.t_b)) / 2, 1e-12);
    c.near(dist[2], std::norm(p.t_a * p.t_b) / 2, 1e-12);
  }
  // Shipped defaults: P0 and P1 near one half, P2 small.
  const auto r = run_scenario(builtin_scenario("penrose-fig3"));
  const auto& d = r.count_distributions.at(0);
  c.expect(std::abs(d[0] - 0.5) < 0.01 && std::abs(d[1] - 0.5) < 0.03 && d[2] < 0.02,
           "defaults not near (1/2, 1/2, 0)");
  c.near(d[2], 0.99 * 0.04 / 2, 1e-12);
  return c;
}

// 5. Posterior from the single record d1 = 1.
Check minimal_information() {
  Check c;
  std::mt19937_64 rng(1005);
  for (int k = 0; k < 20; ++k) {
    const auto p = random_phased(rng);
    const double eps = std::norm(p.r_a * p.t_b) / std::norm(p.t_a * p.r_b);
    const std::pair<std::size_t, int> d1[] = {{0, 1}};
    const auto post = posterior(labeled(psi2_of(p)), DetectionRecord::partial(4, d1));
    c.near(post.of('c'), 1 / (1 + eps), 1e-12);
    c.near(post.of('e'), eps / (1 + eps), 1e-12);
  }
  // Defaults: eps = (0.01 * 0.04) / (0.99 * 0.96) = 1/2376.
  const auto r = run_scenario(builtin_scenario("penrose-fig3"));
  c.near(1.0 / 2376.0, 4.2088e-4, 5e-9);
  c.near(r.posterior->of('c'), 2376.0 / 2377.0, 1e-12);
  c.near(r.posterior->of('c'), 0.99957930, 5e-9);
  c.near(r.posterior->of('e'), 1.0 / 2377.0, 1e-12);
  return c;
}

// 6. Complete record {1,0,0,1}.
Check maximal_information() {
  Check c;
  const auto r =
      run_scenario(with_observations(builtin_scenario("penrose-fig3"), "d1=1,d2=0,d3=0,d4=1"));
  c.expect(r.posterior->entries.size() == 1, "more than one history survives");
  c.expect(r.posterior->entries.at(0).history.label == 'c', "wrong history");
  c.expect(r.posterior->entries.at(0).posterior == 1.0, "posterior not exactly 1");
  return c;
}

// 7. Mixture over the two stage-one alternatives.
Check partial_information() {
  Check c;
  std::mt19937_64 rng(1007);
  for (int k = 0; k < 20; ++k) {
    const auto p = k == 0 ? TwoSourceParams{std::sqrt(0.99), kI * 0.1, 0.2, kI * std::sqrt(0.96)}
                          : random_phased(rng);
    const Circuit stage1(4, {fockretro::testing::two_source_circuit(p).elements()[0],
                             fockretro::testing::two_source_circuit(p).elements()[1]});
    const auto psi1 = run_circuit(stage1, StateVector::basis_state(kPsi0));
    const std::pair<std::size_t, int> a1[] = {{3, 1}, {2, 0}};
    const std::pair<std::size_t, int> a2[] = {{2, 1}, {3, 0}};
    const DetectionRecord alts[] = {DetectionRecord::partial(4, a1), DetectionRecord::partial(4, a2)};
    const auto mixed = mixed_condition(psi1, alts);

    const double a = std::norm(p.t_a * p.r_b);
    const double b = std::norm(p.r_a * p.t_b);
    const double w1 = a / (a + b);
    const double w2 = 1 - w1;
    const auto& basis = mixed.rho.basis();
    const auto psi_1 = StateVector::basis_state(Occupation{1, 0});
    const auto psi_2 = StateVector::basis_state(Occupation{0, 1});
    const Eigen::VectorXcd v1 = basis.to_dense(psi_1);
    const Eigen::VectorXcd v2 = basis.to_dense(psi_2);
    const Eigen::MatrixXcd want = w1 * v1 * v1.adjoint() + w2 * v2 * v2.adjoint();
    c.below((mixed.rho.matrix() - want).cwiseAbs().maxCoeff(), 1e-12);
    c.near(mixed.weights.at(0), w1, 1e-12);
    c.near(mixed.weights.at(1), w2, 1e-12);
    c.near(mixed.weights.at(0) + mixed.weights.at(1), 1.0, 1e-12);
  }
  return c;
}

// 8. Reversibility of the circuit and of the detector coupling.
Check reversibility() {
  Check c;
  std::mt19937_64 rng(1008);
  const auto psi0 = StateVector::basis_state(kPsi0);
  for (int k = 0; k < 20; ++k) {
    const auto p = random_phased(rng);
    const auto circuit = fockretro::testing::two_source_circuit(p);
    const auto psi2 = run_circuit(circuit, psi0);
    c.near(fidelity(run_circuit(invert(circuit), psi2), psi0), 1.0, 1e-12);

    const std::size_t all[] = {0, 1, 2, 3};
    const auto joint = couple_detectors(psi2, all);
    c.near(fidelity(detach_registers(decouple(joint)), psi2), 1.0, 1e-12);
  }
  return c;
}

// 9. Classical forward and backward propagation.
Check classical_resolution() {
  Check c;
  const auto complete = run_scenario(builtin_scenario("penrose-classical"));
  c.near(intensity_in(complete, "output", 0), 0.5, 1e-12);
  c.near(intensity_in(complete, "output", 1), 0.5, 1e-12);
  c.near(intensity_in(complete, "back", 0), 1.0, 1e-12);
  c.near(intensity_in(complete, "back", 1), 0.0, 1e-12);

  // Only the detector arm is kept.
  auto s = builtin_scenario("penrose-classical");
  s.observations = {{0, 1}, {1, 0}};
  const auto partial = run_scenario(s);
  c.near(intensity_in(partial, "back", 0), 0.25, 1e-12);
  c.near(intensity_in(partial, "back", 1), 0.25, 1e-12);

  // Same numbers straight from the field API at intensity I = 2.
  const Circuit bs = s.circuit();
  const auto out = propagate(FieldState::source(2, 0, 2.0), bs);
  const std::size_t d_only[] = {0};
  const auto back = back_propagate(out.restricted_to(d_only), bs);
  c.near(back.intensities()(0), 0.5, 1e-12);
  c.near(back.intensities()(1), 0.5, 1e-12);
  return c;
}

// 10. Sparse evolution against the dense permanent lift.
Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> modes_dist(2, 4);
  std::uniform_int_distribution<int> photons_dist(1, 2);
  for (int k = 0; k < 100; ++k) {
    const auto modes = static_cast<std::size_t>(modes_dist(rng));
    const int photons = photons_dist(rng);
    const auto basis = FockBasis::fixed_total(modes, photons);
    const auto circuit = fockretro::testing::random_circuit(rng, modes);
    const auto state = fockretro::testing::random_state(rng, basis);
    const Eigen::VectorXcd dense = lift_to_dense(circuit, basis) * basis.to_dense(state);
    const Eigen::VectorXcd sparse = basis.to_dense(run_circuit(circuit, state));
    c.below((dense - sparse).cwiseAbs().maxCoeff(), 1e-12);
  }
  return c;
}

// 11. Invariants on randomized inputs.
Check invariants() {
  Check c;
  std::mt19937_64 rng(1011);
  for (int k = 0; k < 100; ++k) {
    const std::size_t modes = 2 + static_cast<std::size_t>(k % 3);
    const auto basis = FockBasis::up_to(modes, 2);
    const auto circuit = fockretro::testing::random_circuit(rng, modes);
    const auto a = fockretro::testing::random_sparse_state(rng, basis);
    const auto b = fockretro::testing::random_sparse_state(rng, basis);

    // Norm preservation and photon-number conservation per fixed-total input.
    const int n = 1 + k % 2;
    const auto fixed = fockretro::testing::random_state(rng, FockBasis::fixed_total(modes, n));
    const auto out = run_circuit(circuit, fixed);
    c.near(out.norm(), 1.0, 1e-12);
    for (const auto& [occ, amp] : out) c.expect(occ.total() == n, "photon number changed");

    // Amplitude symmetry.
    c.near(std::norm(inner_product(a, b)), std::norm(inner_product(b, a)), 1e-14);

    // Partial-trace trace preservation.
    const std::size_t keep[] = {static_cast<std::size_t>(k) % modes};
    c.near(std::abs(partial_trace(a, keep).trace() - 1.0), 0.0, 1e-12);

    // Posterior normalization over a random single-detector record.
    const auto h = enumerate_histories(a);
    const std::pair<std::size_t, int> rec[] = {{keep[0], k % 3}};
    try {
      const auto post = posterior(h, DetectionRecord::partial(modes, rec));
      double total = 0.0;
      for (const auto& e : post.entries) total += e.posterior;
      c.near(total, 1.0, 1e-12);
    } catch (const ImpossibleObservation&) {
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"single-photon detection probabilities", single_photon},
      {"two-photon seven-history structure", psi2_structure},
      {"bunching at the 50:50 splitter", bunching},
      {"detector-1 count distribution", count_distribution_closed_form},
      {"minimal-information posterior", minimal_information},
      {"maximal-information posterior", maximal_information},
      {"partial-information mixture", partial_information},
      {"reversibility", reversibility},
      {"classical forward and back-propagation", classical_resolution},
      {"sparse vs dense oracle", oracle_equivalence},
      {"randomized invariants", invariants},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check result;
    try {
      result = criteria[k].run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.note = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2zu  %-42s  max deviation %.3g%s%s\n", result.ok ? "PASS" : "FAIL", k + 1,
                criteria[k].name, result.worst, result.note.empty() ? "" : "  ",
                result.note.c_str());
    if (!result.ok) ++failures;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
              criteria.size());
  return failures == 0 ? 0 : 1;
}
