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

/**
 * @file
 * Scenario files.
 *
 * Line-oriented `key = value` text with bracketed section headers. Modes and
 * detectors are numbered from 1 in files and on the command line, from 0 in
 * the library API.
 *
 *   [scenario]
 *   name = penrose-fig3              # optional
 *   modes = 4
 *   photons = 1,2                    # one photon (or classical source) per entry
 *   regime = quantum                 # quantum | classical | classical-backprop
 *   intensities = 1                  # classical only, one per source
 *   phases = 0                       # classical only, radians, one per source
 *   coherence = coherent             # classical only: coherent | incoherent
 *
 *   [element]                        # repeated, applied in file order
 *   modes = 1,3
 *   transmittance = 0.99             # |t|^2; r_phase defaults to pi/2, t_phase to 0
 *   r_phase = pi/2
 *   t_phase = 0
 *   # or: matrix = re,im,re,im,re,im,re,im   (row-major M00 M01 M10 M11)
 *
 *   [observe]
 *   d1 = 1                           # photon count read on detector 1
 *
 *   [sweep]
 *   parameter = e1.transmittance     # e<k>.transmittance|r_phase|t_phase, epsilon
 *   from = 0.5
 *   to = 0.99
 *   steps = 10
 *   scale = linear                   # linear | log
 *
 * Phases accept plain numbers or multiples of pi ("pi/2", "-0.25*pi").
 * In the classical-backprop regime an [observe] entry of 0 marks an output
 * arm as unobserved (zeroed before back-propagation); any other value marks it
 * observed. Without an [observe] section every arm is observed.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fockretro/classical.hpp"
#include "fockretro/linopt.hpp"
#include "fockretro/retrodict.hpp"

namespace fockretro {

enum class Regime { kQuantum, kClassical, kClassicalBackprop };
enum class Coherence { kCoherent, kIncoherent };

std::string_view to_string(Regime regime);
std::string_view to_string(Coherence coherence);

struct PolarParameters {
  double transmittance;  // |t|^2
  double r_phase;
  double t_phase;
};

struct ElementSpec {
  std::size_t first_mode;  // 0-based
  std::size_t second_mode;
  std::variant<PolarParameters, Eigen::Matrix2cd> parameters;
  std::size_t line = 0;

  /// Throws InvalidElement naming element `index` (1-based) on failure.
  BeamSplitter build(std::size_t index) const;
};

struct SweepSpec {
  std::string parameter;
  double from;
  double to;
  int steps;
  bool log_scale = false;

  /// Grid points, endpoints included.
  std::vector<double> values() const;
};

struct Scenario {
  std::string name;
  std::size_t num_modes = 0;
  std::vector<std::size_t> sources;  // 0-based, one entry per photon or classical source
  Regime regime = Regime::kQuantum;
  std::vector<ElementSpec> elements;
  std::vector<std::pair<std::size_t, int>> observations;  // (0-based mode, value)

  std::vector<double> intensities;  // classical, one per source
  std::vector<double> phases;       // classical, one per source
  Coherence coherence = Coherence::kCoherent;

  std::optional<SweepSpec> sweep;

  Circuit circuit() const;
  Occupation initial_occupation() const;
  StateVector initial_state() const;
  std::optional<DetectionRecord> record() const;

  /// Photons in modes 1 and 2, splitters on (1,3), (2,4), then (1,2).
  bool is_two_source_apparatus() const;
};

/// Throws ParseError (with line) for syntax problems, SemanticError (naming
/// the key) for bad values and InvalidElement for non-unitary elements.
Scenario parse_scenario(std::string_view text);

/// Names accepted by builtin_scenario().
std::vector<std::string> builtin_names();

/// Source text of a shipped scenario: "single-photon", "penrose-fig3",
/// "penrose-classical". Throws SemanticError on an unknown name.
std::string builtin_scenario_text(std::string_view name);
Scenario builtin_scenario(std::string_view name);

/// "d1=1,d4=0" -> observations (0-based). Replaces any [observe] section.
Scenario with_observations(Scenario scenario, std::string_view spec);

/// Copy with one sweepable parameter set. Throws SemanticError on unknown
/// parameters.
Scenario with_parameter(Scenario scenario, std::string_view parameter, double value);

/// "<param>:<lo>:<hi>:<steps>[:log]"
SweepSpec parse_sweep_spec(std::string_view spec);

}  // namespace fockretro
