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

#include "fockretro/linopt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Complex ipow(Complex base, int exponent) {
  Complex r = 1.0;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void check_modes(std::size_t i, std::size_t j) {
  if (i == j) throw InvalidArgument("beam splitter needs two distinct modes");
}

// Mode index of every photon, ascending.
std::vector<Eigen::Index> photon_modes(const Occupation& occ) {
  std::vector<Eigen::Index> modes;
  for (std::size_t m = 0; m < occ.num_modes(); ++m) {
    for (int k = 0; k < occ[m]; ++k) modes.push_back(static_cast<Eigen::Index>(m));
  }
  return modes;
}

double occupation_factorials(const Occupation& occ) {
  double f = 1.0;
  for (int c : occ.counts()) f *= factorial(c);
  return f;
}

}  // namespace

double unitarity_deviation(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd gram = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return gram.cwiseAbs().maxCoeff();
}

BeamSplitter BeamSplitter::symmetric(Complex t, Complex r, std::size_t i, std::size_t j) {
  Eigen::Matrix2cd m;
  m << t, r, r, t;
  return from_matrix(m, i, j);
}

BeamSplitter BeamSplitter::from_matrix(const Eigen::Matrix2cd& matrix, std::size_t i,
                                       std::size_t j) {
  check_modes(i, j);
  if (!matrix.allFinite()) {
    throw InvalidElement("beam splitter matrix is not finite",
                         std::numeric_limits<double>::infinity());
  }
  const double dev = unitarity_deviation(matrix);
  if (dev > kUnitarityTolerance) {
    std::ostringstream msg;
    msg << "beam splitter on modes (" << i << "," << j
        << ") is not unitary: max|M^dagger M - I| = " << dev;
    throw InvalidElement(msg.str(), dev);
  }
  return {matrix, i, j};
}

BeamSplitter BeamSplitter::inverse() const {
  return {matrix_.adjoint(), modes_.first, modes_.second};
}

Circuit::Circuit(std::size_t num_modes, std::vector<BeamSplitter> elements)
    : num_modes_(num_modes), elements_(std::move(elements)) {
  if (num_modes == 0) throw InvalidArgument("circuit needs at least one mode");
  for (const auto& e : elements_) {
    if (std::max(e.first_mode(), e.second_mode()) >= num_modes_) {
      throw InvalidArgument("element on modes (" + std::to_string(e.first_mode()) + "," +
                            std::to_string(e.second_mode()) + ") exceeds circuit with " +
                            std::to_string(num_modes_) + " modes");
    }
  }
}

Circuit Circuit::then(const BeamSplitter& element) const {
  auto elements = elements_;
  elements.push_back(element);
  return Circuit(num_modes_, std::move(elements));
}

StateVector apply(const BeamSplitter& element, const StateVector& state) {
  const std::size_t i = element.first_mode();
  const std::size_t j = element.second_mode();
  if (std::max(i, j) >= state.num_modes()) {
    throw InvalidArgument("apply: element modes exceed state with " +
                          std::to_string(state.num_modes()) + " modes");
  }
  const auto& m = element.matrix();
  StateVector::Terms out;
  for (const auto& [occ, amp] : state) {
    const int p = occ[i];
    const int q = occ[j];
    // amp / sqrt(p! q!) * (M00 x + M10 y)^p (M01 x + M11 y)^q |rest>
    const Complex prefactor = amp / std::sqrt(factorial(p) * factorial(q));
    for (int k = 0; k <= p; ++k) {
      const Complex from_i =
          binomial(p, k) * ipow(m(0, 0), k) * ipow(m(1, 0), p - k);
      for (int l = 0; l <= q; ++l) {
        const Complex from_j =
            binomial(q, l) * ipow(m(0, 1), l) * ipow(m(1, 1), q - l);
        const int ni = k + l;
        const int nj = p + q - ni;
        const double ladder = std::sqrt(factorial(ni) * factorial(nj));
        out[occ.with(i, ni).with(j, nj)] += prefactor * from_i * from_j * ladder;
      }
    }
  }
  return {state.num_modes(), std::move(out)};
}

StateVector run_circuit(const Circuit& circuit, const StateVector& state) {
  if (circuit.num_modes() != state.num_modes()) {
    throw InvalidArgument("run_circuit: circuit has " + std::to_string(circuit.num_modes()) +
                          " modes, state has " + std::to_string(state.num_modes()));
  }
  StateVector current = state;
  for (const auto& element : circuit.elements()) current = apply(element, current);
  return current;
}

Circuit invert(const Circuit& circuit) {
  std::vector<BeamSplitter> reversed;
  reversed.reserve(circuit.elements().size());
  for (auto it = circuit.elements().rbegin(); it != circuit.elements().rend(); ++it) {
    reversed.push_back(it->inverse());
  }
  return Circuit(circuit.num_modes(), std::move(reversed));
}

Eigen::MatrixXcd mode_transfer_matrix(const Circuit& circuit) {
  const auto n = static_cast<Eigen::Index>(circuit.num_modes());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& e : circuit.elements()) {
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(n, n);
    const auto i = static_cast<Eigen::Index>(e.first_mode());
    const auto j = static_cast<Eigen::Index>(e.second_mode());
    step(i, i) = e.matrix()(0, 0);
    step(j, i) = e.matrix()(1, 0);
    step(i, j) = e.matrix()(0, 1);
    step(j, j) = e.matrix()(1, 1);
    u = step * u;
  }
  return u;
}

Complex permanent(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("permanent: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n > 30) throw ResourceError("permanent: matrix too large");
  Complex total{};
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    Complex prod = 1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      Complex row_sum{};
      for (Eigen::Index c = 0; c < n; ++c) {
        if (s & (std::uint64_t{1} << c)) row_sum += m(r, c);
      }
      prod *= row_sum;
    }
    const int bits = std::popcount(s);
    total += ((n - bits) % 2 == 0) ? prod : -prod;
  }
  return total;
}

Eigen::MatrixXcd lift_to_dense(const Circuit& circuit, const FockBasis& basis) {
  if (basis.num_modes() != circuit.num_modes()) {
    throw BasisMismatch("lift_to_dense: basis and circuit mode counts differ");
  }
  const Eigen::MatrixXcd u = mode_transfer_matrix(circuit);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Occupation& in = basis[static_cast<std::size_t>(col)];
    const auto in_modes = photon_modes(in);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Occupation& out = basis[static_cast<std::size_t>(row)];
      if (out.total() != in.total()) continue;
      const auto out_modes = photon_modes(out);
      const Eigen::MatrixXcd sub = u(out_modes, in_modes);
      dense(row, col) =
          permanent(sub) / std::sqrt(occupation_factorials(in) * occupation_factorials(out));
    }
  }
  return dense;
}

Eigen::MatrixXcd lift_to_dense(const BeamSplitter& element, std::size_t num_modes,
                               const FockBasis& basis) {
  return lift_to_dense(Circuit(num_modes, {element}), basis);
}

}  // namespace fockretro
