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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fockretro/fock.hpp"

namespace fockretro {

/// Dense density matrix indexed by a FockBasis. Positivity is not enforced
/// at construction; see min_eigenvalue().
class DensityOperator {
 public:
  DensityOperator(FockBasis basis, Eigen::MatrixXcd matrix);

  const FockBasis& basis() const noexcept { return basis_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return basis_.size(); }

  Complex trace() const { return matrix_.trace(); }

  /// <row| rho |col>; zero when either occupation is outside the basis.
  Complex element(const Occupation& row, const Occupation& col) const;

  /// Diagonal, as real probabilities.
  Eigen::VectorXd populations() const { return matrix_.diagonal().real(); }

  double hermiticity_deviation() const;
  double min_eigenvalue() const;

 private:
  FockBasis basis_;
  Eigen::MatrixXcd matrix_;
};

/// |state><state| expanded in `basis`. The state must be normalized.
DensityOperator dyad(const StateVector& state, const FockBasis& basis);

/// sum_k weights[k] * operators[k]; all operators share a basis.
DensityOperator weighted_sum(std::span<const double> weights,
                             std::span<const DensityOperator> operators);

/// Reduced operator on `keep_modes` (ascending order in the result). The
/// reduced basis is the set of kept-mode occupations appearing in rho's basis.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep_modes);

/// Same reduction computed directly from a normalized pure state, without
/// forming the full dyad.
DensityOperator partial_trace(const StateVector& state, std::span<const std::size_t> keep_modes);

/// P_n, n = 0..max photons, of finding n photons in `mode`.
std::vector<double> count_distribution(const StateVector& state, std::size_t mode);

}  // namespace fockretro
