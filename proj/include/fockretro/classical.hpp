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
 * Classical monochromatic fields through the same beam-splitter circuits.
 * Amplitudes are in units of sqrt(intensity).
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fockretro/linopt.hpp"

namespace fockretro {

/// One complex amplitude per mode.
class FieldState {
 public:
  explicit FieldState(Eigen::VectorXcd amplitudes);

  /// Zero field on `num_modes` modes.
  static FieldState dark(std::size_t num_modes);

  /// Single source of the given intensity and phase on `mode`.
  static FieldState source(std::size_t num_modes, std::size_t mode, double intensity,
                           double phase = 0.0);

  std::size_t num_modes() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }

  Eigen::VectorXd intensities() const { return amplitudes_.cwiseAbs2(); }
  double total_intensity() const { return amplitudes_.squaredNorm(); }

  /// Copy with unlisted modes set to zero.
  FieldState restricted_to(std::span<const std::size_t> observed) const;

  friend FieldState operator+(const FieldState& a, const FieldState& b);

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Mutually incoherent members; weights sum to 1.
class IncoherentEnsemble {
 public:
  struct Member {
    FieldState field;
    double weight;
  };

  explicit IncoherentEnsemble(std::vector<Member> members);

  const std::vector<Member>& members() const noexcept { return members_; }

 private:
  std::vector<Member> members_;
};

FieldState propagate(const FieldState& fields, const Circuit& circuit);

/// Propagation through invert(circuit).
FieldState back_propagate(const FieldState& fields_at_outputs, const Circuit& circuit);

/// Weighted mean of output intensities; phases between members never interfere.
Eigen::VectorXd incoherent_mix(const IncoherentEnsemble& ensemble, const Circuit& circuit);

}  // namespace fockretro
