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

#include "fockretro/density.hpp"

#include <algorithm>
#include <map>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

std::vector<std::size_t> checked_keep_set(std::span<const std::size_t> keep_modes,
                                          std::size_t num_modes) {
  if (keep_modes.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<std::size_t> keep(keep_modes.begin(), keep_modes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= num_modes) {
    throw InvalidArgument("partial_trace: mode " + std::to_string(keep.back()) +
                          " out of range for " + std::to_string(num_modes) + " modes");
  }
  return keep;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& keep, std::size_t num_modes) {
  std::vector<std::size_t> rest;
  for (std::size_t m = 0; m < num_modes; ++m) {
    if (!std::binary_search(keep.begin(), keep.end(), m)) rest.push_back(m);
  }
  return rest;
}

FockBasis reduced_basis(const FockBasis& full, const std::vector<std::size_t>& keep) {
  std::vector<Occupation> states;
  states.reserve(full.size());
  for (const auto& occ : full) states.push_back(occ.select(keep));
  return FockBasis::from_occupations(keep.size(), std::move(states));
}

Eigen::Index at(const FockBasis& basis, const Occupation& occ) {
  return static_cast<Eigen::Index>(*basis.index_of(occ));
}

}  // namespace

DensityOperator::DensityOperator(FockBasis basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw BasisMismatch("DensityOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + ", basis has " + std::to_string(n) +
                        " states");
  }
}

Complex DensityOperator::element(const Occupation& row, const Occupation& col) const {
  auto r = basis_.index_of(row);
  auto c = basis_.index_of(col);
  if (!r || !c) return {};
  return matrix_(static_cast<Eigen::Index>(*r), static_cast<Eigen::Index>(*c));
}

double DensityOperator::hermiticity_deviation() const {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityOperator dyad(const StateVector& state, const FockBasis& basis) {
  if (!state.is_normalized()) throw InvalidArgument("dyad: state is not normalized");
  const Eigen::VectorXcd v = basis.to_dense(state);
  return {basis, v * v.adjoint()};
}

DensityOperator weighted_sum(std::span<const double> weights,
                             std::span<const DensityOperator> operators) {
  if (weights.size() != operators.size() || operators.empty()) {
    throw InvalidArgument("weighted_sum: need one weight per operator");
  }
  const FockBasis& basis = operators.front().basis();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(operators.front().matrix().rows(),
                                                operators.front().matrix().cols());
  for (std::size_t k = 0; k < operators.size(); ++k) {
    if (!(operators[k].basis() == basis)) throw BasisMismatch("weighted_sum: bases differ");
    sum += weights[k] * operators[k].matrix();
  }
  return {basis, std::move(sum)};
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::size_t> keep_modes) {
  const FockBasis& full = rho.basis();
  const auto keep = checked_keep_set(keep_modes, full.num_modes());
  const auto traced = complement(keep, full.num_modes());
  FockBasis reduced = reduced_basis(full, keep);

  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(reduced.size()),
                             static_cast<Eigen::Index>(reduced.size()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    const Occupation env_i = full[i].select(traced);
    const Eigen::Index ri = at(reduced, full[i].select(keep));
    for (std::size_t j = 0; j < full.size(); ++j) {
      if (full[j].select(traced) != env_i) continue;
      out(ri, at(reduced, full[j].select(keep))) +=
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return {std::move(reduced), std::move(out)};
}

DensityOperator partial_trace(const StateVector& state, std::span<const std::size_t> keep_modes) {
  if (!state.is_normalized()) throw InvalidArgument("partial_trace: state is not normalized");
  const auto keep = checked_keep_set(keep_modes, state.num_modes());
  const auto traced = complement(keep, state.num_modes());
  FockBasis reduced = reduced_basis(FockBasis::spanning(state), keep);

  // Group amplitudes by environment occupation; each group contributes a
  // rank-1 block.
  std::map<Occupation, std::vector<std::pair<Eigen::Index, Complex>>> by_environment;
  for (const auto& [occ, amp] : state) {
    by_environment[occ.select(traced)].emplace_back(at(reduced, occ.select(keep)), amp);
  }
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(reduced.size()),
                             static_cast<Eigen::Index>(reduced.size()));
  for (const auto& [env, group] : by_environment) {
    for (const auto& [r, a] : group) {
      for (const auto& [c, b] : group) out(r, c) += a * std::conj(b);
    }
  }
  return {std::move(reduced), std::move(out)};
}

std::vector<double> count_distribution(const StateVector& state, std::size_t mode) {
  if (mode >= state.num_modes()) {
    throw InvalidArgument("count_distribution: mode " + std::to_string(mode) + " out of range");
  }
  if (!state.is_normalized()) throw InvalidArgument("count_distribution: state is not normalized");
  std::vector<double> p(static_cast<std::size_t>(state.max_photons()) + 1, 0.0);
  for (const auto& [occ, amp] : state) p[static_cast<std::size_t>(occ[mode])] += std::norm(amp);
  return p;
}

}  // namespace fockretro
