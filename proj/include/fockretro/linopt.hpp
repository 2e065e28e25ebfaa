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
 * Lossless beam splitters acting on photon-number states.
 *
 * An element couples modes i and j through a 2x2 unitary M whose columns are
 * the images of the input creation operators:
 *
 *   a_i^dagger -> M(0,0) a_i^dagger + M(1,0) a_j^dagger
 *   a_j^dagger -> M(0,1) a_i^dagger + M(1,1) a_j^dagger
 *
 * The same matrix maps classical mode amplitudes, E_out = M E_in.
 */
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockretro/fock.hpp"

namespace fockretro {

/// Tolerance on max |M^dagger M - I| when an element is constructed.
inline constexpr double kUnitarityTolerance = 1e-10;

/// max |M^dagger M - I| over all entries.
double unitarity_deviation(const Eigen::Ref<const Eigen::MatrixXcd>& m);

class BeamSplitter {
 public:
  /// Symmetric element [[t, r], [r, t]] on modes (i, j). Requires
  /// |t|^2 + |r|^2 = 1 and t conj(r) + r conj(t) = 0.
  static BeamSplitter symmetric(Complex t, Complex r, std::size_t i, std::size_t j);

  /// Any 2x2 unitary.
  static BeamSplitter from_matrix(const Eigen::Matrix2cd& matrix, std::size_t i, std::size_t j);

  std::size_t first_mode() const noexcept { return modes_.first; }
  std::size_t second_mode() const noexcept { return modes_.second; }
  const Eigen::Matrix2cd& matrix() const noexcept { return matrix_; }

  Complex transmission() const { return matrix_(0, 0); }
  Complex reflection() const { return matrix_(1, 0); }

  /// Same modes, adjoint matrix.
  BeamSplitter inverse() const;

  friend bool operator==(const BeamSplitter& a, const BeamSplitter& b) {
    return a.modes_ == b.modes_ && a.matrix_ == b.matrix_;
  }

 private:
  BeamSplitter(const Eigen::Matrix2cd& matrix, std::size_t i, std::size_t j)
      : modes_(i, j), matrix_(matrix) {}

  std::pair<std::size_t, std::size_t> modes_;
  Eigen::Matrix2cd matrix_;
};

/// Convenience spelling of BeamSplitter::symmetric.
inline BeamSplitter beam_splitter(Complex t, Complex r, std::size_t i, std::size_t j) {
  return BeamSplitter::symmetric(t, r, i, j);
}

/// Ordered sequence of elements on a fixed number of modes.
class Circuit {
 public:
  explicit Circuit(std::size_t num_modes, std::vector<BeamSplitter> elements = {});

  std::size_t num_modes() const noexcept { return num_modes_; }
  const std::vector<BeamSplitter>& elements() const noexcept { return elements_; }
  bool empty() const noexcept { return elements_.empty(); }

  Circuit then(const BeamSplitter& element) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_modes_;
  std::vector<BeamSplitter> elements_;
};

/// Expands every term by substituting the transformed creation operators.
/// Conserves photon number exactly.
StateVector apply(const BeamSplitter& element, const StateVector& state);

/// Elements in order.
StateVector run_circuit(const Circuit& circuit, const StateVector& state);

/// Reversed order, each element adjoint.
Circuit invert(const Circuit& circuit);

/// num_modes x num_modes single-particle transfer matrix of the circuit.
Eigen::MatrixXcd mode_transfer_matrix(const Circuit& circuit);

/// Permanent by Ryser's formula. Square input only.
Complex permanent(const Eigen::Ref<const Eigen::MatrixXcd>& m);

/// Matrix of the circuit on a fixed-photon-number basis, built from
/// permanents of the transfer matrix. Column k is the image of basis[k].
/// Bases of mixed photon number are handled block by block.
Eigen::MatrixXcd lift_to_dense(const Circuit& circuit, const FockBasis& basis);
Eigen::MatrixXcd lift_to_dense(const BeamSplitter& element, std::size_t num_modes,
                               const FockBasis& basis);

}  // namespace fockretro
