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

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fockretro/errors.hpp"
#include "fockretro/report.hpp"
#include "fockretro/scenario.hpp"
#include "test_support.hpp"

namespace fockretro {
namespace {

double posterior_of(const Report& r, char label) {
  if (!r.posterior) return -1.0;
  return r.posterior->of(label);
}

TEST(RunScenario, SinglePhotonSplitsEvenly) {
  const auto r = run_scenario(builtin_scenario("single-photon"));
  ASSERT_EQ(r.histories.size(), 2u);
  for (const auto& h : r.histories) EXPECT_NEAR(h.probability, 0.5, 1e-12);
  EXPECT_FALSE(r.posterior.has_value());
  ASSERT_EQ(r.count_distributions.size(), 2u);
  EXPECT_NEAR(r.count_distributions[0][1], 0.5, 1e-12);
}

TEST(RunScenario, TwoSourceMinimalInformation) {
  const auto r = run_scenario(builtin_scenario("penrose-fig3"));
  ASSERT_EQ(r.histories.size(), 7u);
  const double eps = 0.01 * 0.04 / (0.99 * 0.96);
  EXPECT_NEAR(posterior_of(r, 'c'), 1.0 / (1.0 + eps), 1e-12);
  EXPECT_NEAR(posterior_of(r, 'e'), eps / (1.0 + eps), 1e-12);
  ASSERT_TRUE(r.reduced.has_value());
  EXPECT_NEAR(r.reduced->element(Occupation{2}, Occupation{2}).real(), 0.0198, 1e-12);
  ASSERT_TRUE(r.conditioned.has_value());
  EXPECT_NEAR(r.conditioned->probability, r.posterior->evidence, 1e-12);
}

TEST(RunScenario, ClassicalBackPropagation) {
  const auto r = run_scenario(builtin_scenario("penrose-classical"));
  const IntensityTable* back = nullptr;
  for (const auto& t : r.intensity_tables)
    if (t.title == "back") back = &t;
  ASSERT_NE(back, nullptr);
  EXPECT_NEAR(back->intensities(0), 1.0, 1e-12);
  EXPECT_NEAR(back->intensities(1), 0.0, 1e-12);
}

TEST(RunScenario, ImpossibleObservationCarriesScenarioName) {
  const auto s = with_observations(builtin_scenario("penrose-fig3"), "d1=3");
  try {
    run_scenario(s);
    FAIL() << "expected ImpossibleObservation";
  } catch (const ImpossibleObservation& e) {
    EXPECT_NE(std::string(e.what()).find("penrose-fig3"), std::string::npos) << e.what();
  }
}

TEST(RunScenario, ProbabilityTablesSumToOne) {
  const auto r = run_scenario(with_observations(builtin_scenario("penrose-fig3"), "d2=1,d3=0"));
  double h = 0.0;
  for (const auto& x : r.histories) h += x.probability;
  EXPECT_NEAR(h, 1.0, 1e-12);
  for (const auto& dist : r.count_distributions) {
    double s = 0.0;
    for (double p : dist) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  double post = 0.0;
  for (const auto& e : r.posterior->entries) post += e.posterior;
  EXPECT_NEAR(post, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.reduced->trace() - 1.0), 0.0, 1e-12);
}

TEST(FormatTsv, IsDeterministic) {
  const auto s = builtin_scenario("penrose-fig3");
  const auto a = format_tsv(run_scenario(s, {true}));
  const auto b = format_tsv(run_scenario(parse_scenario(builtin_scenario_text("penrose-fig3")), {true}));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("posterior\t(c)\t(1,0,0,1)\t0.4752\t0.999579301641\n"), std::string::npos) << a;
}

TEST(FormatTsv, RowsAreTabSeparated) {
  const auto text = format_tsv(run_scenario(builtin_scenario("single-photon")));
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_NE(line.find('\t'), std::string::npos) << line;
    ++rows;
  }
  EXPECT_GT(rows, 5);
}

TEST(FormatReal, TwelveSignificantDigits) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(0.0198), "0.0198");
}

TEST(Sweep, EpsilonGridGivesClosedFormPosterior) {
  const auto base = builtin_scenario("penrose-fig3");
  const std::vector<double> eps{1e-1, 1e-2, 1e-4};
  const auto points = sweep(base, "epsilon", eps);
  ASSERT_EQ(points.size(), 3u);
  double previous = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    EXPECT_EQ(points[k].value, eps[k]);
    const double w1 = posterior_of(points[k].report, 'c');
    EXPECT_NEAR(w1, 1.0 / (1.0 + eps[k]), 1e-12);
    EXPECT_GT(w1, previous);  // W1 grows as epsilon shrinks
    previous = w1;
  }
}

TEST(Sweep, SymmetricApparatusIsEvenOdds) {
  const auto points = sweep(builtin_scenario("penrose-fig3"), "epsilon", {1.0});
  EXPECT_NEAR(posterior_of(points[0].report, 'c'), 0.5, 1e-12);
  EXPECT_NEAR(posterior_of(points[0].report, 'e'), 0.5, 1e-12);
}

TEST(Sweep, SingleStepEqualsRunScenario) {
  const auto base = builtin_scenario("penrose-fig3");
  const auto points = sweep(base, "e1.transmittance", {0.99});
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(format_tsv(points[0].report), format_tsv(run_scenario(base)));
}

TEST(Sweep, UnknownParameter) {
  EXPECT_THROW(sweep(builtin_scenario("penrose-fig3"), "e1.colour", {0.5}), SemanticError);
}

TEST(OracleCheck, TwoSourceApparatus) {
  EXPECT_LT(oracle_check(builtin_scenario("penrose-fig3")), 1e-12);
  const auto r = run_scenario(builtin_scenario("penrose-fig3"), {true});
  ASSERT_TRUE(r.oracle_deviation.has_value());
  EXPECT_LT(*r.oracle_deviation, 1e-12);
}

TEST(OracleCheck, IdentityCircuitIsExact) {
  const auto s = parse_scenario(
      "[scenario]\nmodes = 3\nphotons = 1,1\n[element]\nmodes = 1,2\ntransmittance = 1\n"
      "r_phase = 0\n");
  EXPECT_EQ(oracle_check(s), 0.0);
}

TEST(OracleCheck, RandomCircuits) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> pick_modes(2, 4);
  for (int seed = 0; seed < 100; ++seed) {
    const auto modes = static_cast<std::size_t>(pick_modes(rng));
    const auto c = testing::random_circuit(rng, modes);
    std::ostringstream text;
    text << "[scenario]\nmodes = " << modes << "\nphotons = 1," << (seed % 2 ? 1 : 2) << "\n";
    for (const auto& e : c.elements()) {
      text << "[element]\nmodes = " << e.first_mode() + 1 << "," << e.second_mode() + 1
           << "\nmatrix = ";
      text.precision(17);
      for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col)
          text << e.matrix()(r, col).real() << "," << e.matrix()(r, col).imag()
               << (r == 1 && col == 1 ? "\n" : ",");
    }
    EXPECT_LT(oracle_check(parse_scenario(text.str())), 1e-12) << text.str();
  }
}

TEST(OracleCheck, ClassicalRegimeIsRejected) {
  EXPECT_THROW(oracle_check(builtin_scenario("penrose-classical")), InvalidArgument);
}

}  // namespace
}  // namespace fockretro
