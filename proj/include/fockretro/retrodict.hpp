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
 * Retrodiction over detection histories.
 *
 * A history is one Fock-basis outcome of the evolved field; detectors only
 * resolve photon counts, so equal outcomes are the same history. Given a
 * detection record (some modes read, others ignored) the posterior over
 * histories is the prior restricted to consistent outcomes and renormalized.
 * Conditioning does the same at the level of the state vector, and the
 * detector model makes the readout itself a reversible unitary copy of the
 * photon counts into registers.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fockretro/density.hpp"
#include "fockretro/fock.hpp"

namespace fockretro {

struct History {
  Occupation outcome;
  Complex amplitude;
  double probability;  // |amplitude|^2
  std::optional<char> label;

  /// "(c)" when labeled, otherwise the outcome tuple.
  std::string name() const;
};

/// One history per stored term, in lexicographic outcome order. The state
/// must be normalized.
std::vector<History> enumerate_histories(const StateVector& state);

/// Letters (a)-(g) for the two-source, four-detector apparatus: two photons
/// in modes 1 and 2 pass splitters on (1,3) and (2,4), then a 50:50 splitter
/// on (1,2). Outcomes are matched by count signature; others stay unlabeled.
void label_two_source_histories(std::span<History> histories);

/// Per-mode detector readings; std::nullopt marks a mode nobody looked at.
class DetectionRecord {
 public:
  explicit DetectionRecord(std::vector<std::optional<int>> entries);

  /// All modes read.
  static DetectionRecord complete(const Occupation& counts);

  /// Only the listed (mode, count) pairs read, out of `num_modes`.
  static DetectionRecord partial(std::size_t num_modes,
                                 std::span<const std::pair<std::size_t, int>> observed);

  std::size_t num_modes() const noexcept { return entries_.size(); }
  const std::optional<int>& operator[](std::size_t mode) const { return entries_.at(mode); }

  std::vector<std::size_t> observed_modes() const;
  std::vector<std::size_t> unobserved_modes() const;

  bool matches(const Occupation& outcome) const;

  /// "d1=1,d4=0" with 1-based detector numbers.
  std::string to_string() const;

 private:
  std::vector<std::optional<int>> entries_;
};

struct PosteriorEntry {
  History history;
  double posterior;
};

/// Consistent histories with renormalized probabilities, in history order.
struct Posterior {
  std::vector<PosteriorEntry> entries;
  double evidence;  // prior mass of the record

  /// Posterior of the history with this outcome; 0 when inconsistent.
  double of(const Occupation& outcome) const;
  /// Posterior of the labeled history; 0 when absent.
  double of(char label) const;
};

/// Throws ImpossibleObservation when no history is consistent with `record`.
Posterior posterior(std::span<const History> histories, const DetectionRecord& record);

struct Conditioned {
  StateVector residual;  // normalized, over record.unobserved_modes()
  double probability;
};

/// Projects onto the observed counts. The record must leave at least one
/// mode unobserved.
Conditioned condition(const StateVector& state, const DetectionRecord& record);

struct MixedConditioned {
  DensityOperator rho;          // over the common unobserved modes
  std::vector<double> weights;  // one per alternative, summing to 1
};

/// Knowledge that exactly one of several mutually exclusive records occurred.
/// All alternatives must observe the same set of modes.
MixedConditioned mixed_condition(const StateVector& state,
                                 std::span<const DetectionRecord> alternatives);

/// Field modes followed by one register per coupled detector. A register
/// level is stored like a photon count, in [0, register_dim).
struct JointState {
  StateVector state;
  std::size_t field_modes;
  std::vector<std::size_t> detector_modes;
  int register_dim;
};

/// Field with every register in its ground level.
JointState attach_registers(const StateVector& field, std::span<const std::size_t> modes);

/// Number-copy unitary |n>|k> -> |n>|(k + n) mod d>. Every register must be
/// in its ground level.
JointState couple(const JointState& joint);

/// Inverse of couple: |n>|k> -> |n>|(k - n) mod d>.
JointState decouple(const JointState& joint);

/// attach_registers followed by couple.
JointState couple_detectors(const StateVector& field, std::span<const std::size_t> modes);

/// Field state of a joint state whose registers are all in ground level.
StateVector detach_registers(const JointState& joint);

/// Probability of each register reading, marginalized over the field.
std::vector<std::pair<Occupation, double>> register_distribution(const JointState& joint);

/// Posterior over histories read off the coupled registers: consistent
/// readings, renormalized. `record` covers the field modes; only coupled
/// modes may be observed.
std::vector<std::pair<Occupation, double>> register_posterior(const JointState& joint,
                                                              const DetectionRecord& record);

}  // namespace fockretro
