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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockretro/density.hpp"
#include "fockretro/retrodict.hpp"
#include "fockretro/scenario.hpp"

namespace fockretro {

struct IntensityTable {
  std::string title;
  Eigen::VectorXd intensities;
};

struct Report {
  Scenario scenario;

  // quantum regime
  std::vector<History> histories;                        // forward state, term by term
  std::vector<std::vector<double>> count_distributions;  // per mode
  std::optional<DetectionRecord> record;
  std::optional<Posterior> posterior;
  std::optional<DensityOperator> reduced;  // over the observed modes
  std::optional<Conditioned> conditioned;  // on the unobserved modes

  // classical regimes
  std::vector<IntensityTable> intensity_tables;

  std::optional<double> oracle_deviation;
};

struct RunOptions {
  bool oracle = false;
};

/// Deterministic for identical input. Module errors are rethrown with the
/// scenario name prefixed; probability tables are checked to sum to 1.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

struct SweepPoint {
  std::string parameter;
  double value;
  Report report;
};

/// One report per value; points are evaluated concurrently.
std::vector<SweepPoint> sweep(const Scenario& scenario, const std::string& parameter,
                              const std::vector<double>& values,
                              const RunOptions& options = {});
std::vector<SweepPoint> sweep(const Scenario& scenario, const SweepSpec& spec,
                              const RunOptions& options = {});

/// Largest elementwise difference between the sparse forward state and the
/// product of per-element dense lifts applied to the initial state. Quantum
/// regime only; throws ResourceError above 1000 basis states.
double oracle_check(const Scenario& scenario);

inline constexpr std::size_t kMaxOracleBasis = 1000;

/// Tolerance on every emitted probability table and on the oracle deviation.
inline constexpr double kReportTolerance = 1e-12;

/// Machine-readable, tab-separated, 12 significant digits.
std::string format_tsv(const Report& report);
std::string format_tsv(const std::vector<SweepPoint>& points);

/// Aligned columns for reading.
std::string format_table(const Report& report);
std::string format_table(const std::vector<SweepPoint>& points);

/// "%.12g" with negative zero folded to zero.
std::string format_real(double value);

}  // namespace fockretro
