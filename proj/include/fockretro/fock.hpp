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
 * Fock-basis bookkeeping: occupation vectors, sparse photon-number state
 * vectors and ordered bases for dense expansions.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fockretro {

using Complex = std::complex<double>;

/// Amplitudes with modulus below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;

/// Allowed deviation of a squared norm from 1 for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-12;

/// Photon count per mode. Ordered lexicographically.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts);
  Occupation(std::initializer_list<int> counts);

  static Occupation zeros(std::size_t num_modes);

  std::size_t num_modes() const noexcept { return counts_.size(); }
  int operator[](std::size_t mode) const { return counts_.at(mode); }
  std::span<const int> counts() const noexcept { return counts_; }

  /// Conserved photon number.
  int total() const noexcept;

  /// Copy with `mode` set to `count`.
  Occupation with(std::size_t mode, int count) const;

  /// Counts of the listed modes, in the listed order.
  Occupation select(std::span<const std::size_t> modes) const;

  /// "(1,0,0,1)"
  std::string to_string() const;

  friend auto operator<=>(const Occupation&, const Occupation&) = default;
  friend bool operator==(const Occupation&, const Occupation&) = default;

 private:
  std::vector<int> counts_;
};

/// Occupation of `a` followed by occupation of `b`.
Occupation concat(const Occupation& a, const Occupation& b);

/// Sparse pure state: occupation -> amplitude. Immutable once built; every
/// constructor prunes amplitudes below kPruneThreshold.
class StateVector {
 public:
  using Terms = std::map<Occupation, Complex>;

  /// The zero vector on `num_modes` modes.
  explicit StateVector(std::size_t num_modes);
  StateVector(std::size_t num_modes, Terms terms);

  static StateVector basis_state(const Occupation& occupation, Complex amplitude = 1.0);

  std::size_t num_modes() const noexcept { return num_modes_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Zero when the occupation is absent.
  Complex amplitude(const Occupation& occupation) const;

  double squared_norm() const;
  double norm() const;
  bool is_normalized(double tolerance = kNormTolerance) const;

  /// Largest photon number among the stored terms; 0 for the zero vector.
  int max_photons() const;

  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

 private:
  std::size_t num_modes_;
  Terms terms_;
};

StateVector operator*(Complex scale, const StateVector& state);
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);

/// |0,...,0> on `num_modes` modes.
StateVector vacuum(std::size_t num_modes);

/// Applies the creation operator on `mode`. A single-term input is
/// renormalized so basis states map to basis states; superpositions are
/// mapped linearly with the sqrt(n+1) ladder factors.
StateVector create_photon(const StateVector& state, std::size_t mode);

/// Sum over shared occupations of conj(a) * b.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a, b>|^2 for normalized a, b.
double fidelity(const StateVector& a, const StateVector& b);

/// Kronecker product; modes of `a` come first.
StateVector tensor(const StateVector& a, const StateVector& b);

struct Normalized {
  StateVector state;
  double norm;
};

/// Throws DegenerateState on the zero vector.
Normalized normalize(const StateVector& state);

/// Ordered set of occupations used to index dense vectors and matrices.
class FockBasis {
 public:
  /// All occupations of `num_modes` modes with exactly `photons` photons,
  /// C(photons + num_modes - 1, num_modes - 1) of them.
  static FockBasis fixed_total(std::size_t num_modes, int photons);

  /// All occupations with at most `max_photons` photons.
  static FockBasis up_to(std::size_t num_modes, int max_photons);

  /// Smallest of the two shapes above containing every term of `state`.
  static FockBasis spanning(const StateVector& state);

  /// Arbitrary set; sorted and deduplicated.
  static FockBasis from_occupations(std::size_t num_modes, std::vector<Occupation> states);

  std::size_t num_modes() const noexcept { return num_modes_; }
  std::size_t size() const noexcept { return states_.size(); }
  const Occupation& operator[](std::size_t index) const { return states_.at(index); }
  std::optional<std::size_t> index_of(const Occupation& occupation) const;
  bool contains(const Occupation& occupation) const { return index_of(occupation).has_value(); }

  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

  /// Throws BasisMismatch when the state has support outside the basis.
  Eigen::VectorXcd to_dense(const StateVector& state) const;
  StateVector from_dense(const Eigen::Ref<const Eigen::VectorXcd>& coords) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  FockBasis(std::size_t num_modes, std::vector<Occupation> states);

  std::size_t num_modes_;
  std::vector<Occupation> states_;  // sorted
};

}  // namespace fockretro
