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

#include "fockretro/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

void prune(StateVector::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void require_same_modes(const StateVector& a, const StateVector& b, const char* op) {
  if (a.num_modes() != b.num_modes()) {
    throw InvalidArgument(std::string(op) + ": mode count mismatch (" +
                          std::to_string(a.num_modes()) + " vs " + std::to_string(b.num_modes()) +
                          ")");
  }
}

// Appends occupations of modes [mode, end) in lexicographic order.
void enumerate(std::vector<int>& counts, std::size_t mode, int remaining, bool exact,
               std::vector<Occupation>& out) {
  if (mode + 1 == counts.size()) {
    for (int c = exact ? remaining : 0; c <= remaining; ++c) {
      counts[mode] = c;
      out.emplace_back(counts);
    }
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[mode] = c;
    enumerate(counts, mode + 1, remaining - c, exact, out);
  }
}

}  // namespace

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw InvalidArgument("occupation counts must be non-negative");
  }
}

Occupation::Occupation(std::initializer_list<int> counts)
    : Occupation(std::vector<int>(counts)) {}

Occupation Occupation::zeros(std::size_t num_modes) {
  return Occupation(std::vector<int>(num_modes, 0));
}

int Occupation::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

Occupation Occupation::with(std::size_t mode, int count) const {
  if (mode >= counts_.size()) throw InvalidArgument("mode index out of range");
  auto counts = counts_;
  counts[mode] = count;
  return Occupation(std::move(counts));
}

Occupation Occupation::select(std::span<const std::size_t> modes) const {
  std::vector<int> counts;
  counts.reserve(modes.size());
  for (auto m : modes) {
    if (m >= counts_.size()) throw InvalidArgument("mode index out of range");
    counts.push_back(counts_[m]);
  }
  return Occupation(std::move(counts));
}

std::string Occupation::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s + ')';
}

Occupation concat(const Occupation& a, const Occupation& b) {
  std::vector<int> counts(a.counts().begin(), a.counts().end());
  counts.insert(counts.end(), b.counts().begin(), b.counts().end());
  return Occupation(std::move(counts));
}

StateVector::StateVector(std::size_t num_modes) : num_modes_(num_modes) {
  if (num_modes == 0) throw InvalidArgument("a state needs at least one mode");
}

StateVector::StateVector(std::size_t num_modes, Terms terms)
    : StateVector(num_modes) {
  for (const auto& [occ, amp] : terms) {
    if (occ.num_modes() != num_modes) {
      throw InvalidArgument("occupation " + occ.to_string() + " does not have " +
                            std::to_string(num_modes) + " modes");
    }
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw InvalidArgument("non-finite amplitude on " + occ.to_string());
    }
  }
  terms_ = std::move(terms);
  prune(terms_);
}

StateVector StateVector::basis_state(const Occupation& occupation, Complex amplitude) {
  return StateVector(occupation.num_modes(), Terms{{occupation, amplitude}});
}

Complex StateVector::amplitude(const Occupation& occupation) const {
  auto it = terms_.find(occupation);
  return it == terms_.end() ? Complex{} : it->second;
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += std::norm(amp);
  return s;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(squared_norm() - 1.0) <= tolerance;
}

int StateVector::max_photons() const {
  int n = 0;
  for (const auto& [occ, amp] : terms_) n = std::max(n, occ.total());
  return n;
}

StateVector operator*(Complex scale, const StateVector& state) {
  StateVector::Terms terms;
  for (const auto& [occ, amp] : state) terms.emplace(occ, scale * amp);
  return {state.num_modes(), std::move(terms)};
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  require_same_modes(a, b, "add");
  auto terms = a.terms();
  for (const auto& [occ, amp] : b) terms[occ] += amp;
  return {a.num_modes(), std::move(terms)};
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  return a + Complex(-1.0) * b;
}

StateVector vacuum(std::size_t num_modes) {
  if (num_modes == 0) throw InvalidArgument("vacuum: num_modes must be positive");
  return StateVector::basis_state(Occupation::zeros(num_modes));
}

StateVector create_photon(const StateVector& state, std::size_t mode) {
  if (mode >= state.num_modes()) {
    throw InvalidArgument("create_photon: mode " + std::to_string(mode) + " out of range");
  }
  StateVector::Terms terms;
  for (const auto& [occ, amp] : state) {
    const int n = occ[mode];
    terms.emplace(occ.with(mode, n + 1), std::sqrt(static_cast<double>(n + 1)) * amp);
  }
  StateVector raised(state.num_modes(), std::move(terms));
  if (state.size() == 1) {
    return StateVector::basis_state(raised.begin()->first, state.begin()->second);
  }
  return raised;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  require_same_modes(a, b, "inner_product");
  Complex sum{};
  for (const auto& [occ, amp] : a) {
    auto it = b.terms().find(occ);
    if (it != b.terms().end()) sum += std::conj(amp) * it->second;
  }
  return sum;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector::Terms terms;
  for (const auto& [oa, xa] : a) {
    for (const auto& [ob, xb] : b) terms.emplace(concat(oa, ob), xa * xb);
  }
  return {a.num_modes() + b.num_modes(), std::move(terms)};
}

Normalized normalize(const StateVector& state) {
  const double n = state.norm();
  if (n == 0.0) throw DegenerateState("normalize: zero state");
  return {Complex(1.0 / n) * state, n};
}

FockBasis::FockBasis(std::size_t num_modes, std::vector<Occupation> states)
    : num_modes_(num_modes), states_(std::move(states)) {}

FockBasis FockBasis::fixed_total(std::size_t num_modes, int photons) {
  if (num_modes == 0) throw InvalidArgument("FockBasis: num_modes must be positive");
  if (photons < 0) throw InvalidArgument("FockBasis: photon number must be non-negative");
  std::vector<int> counts(num_modes, 0);
  std::vector<Occupation> states;
  enumerate(counts, 0, photons, true, states);
  return {num_modes, std::move(states)};
}

FockBasis FockBasis::up_to(std::size_t num_modes, int max_photons) {
  if (num_modes == 0) throw InvalidArgument("FockBasis: num_modes must be positive");
  if (max_photons < 0) throw InvalidArgument("FockBasis: photon number must be non-negative");
  std::vector<int> counts(num_modes, 0);
  std::vector<Occupation> states;
  enumerate(counts, 0, max_photons, false, states);
  return {num_modes, std::move(states)};
}

FockBasis FockBasis::spanning(const StateVector& state) {
  const int n = state.max_photons();
  const bool fixed = std::all_of(state.begin(), state.end(),
                                 [n](const auto& kv) { return kv.first.total() == n; });
  return fixed ? fixed_total(state.num_modes(), n) : up_to(state.num_modes(), n);
}

FockBasis FockBasis::from_occupations(std::size_t num_modes, std::vector<Occupation> states) {
  if (num_modes == 0) throw InvalidArgument("FockBasis: num_modes must be positive");
  for (const auto& occ : states) {
    if (occ.num_modes() != num_modes) {
      throw InvalidArgument("FockBasis: " + occ.to_string() + " does not have " +
                            std::to_string(num_modes) + " modes");
    }
  }
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return {num_modes, std::move(states)};
}

std::optional<std::size_t> FockBasis::index_of(const Occupation& occupation) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), occupation);
  if (it == states_.end() || *it != occupation) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

Eigen::VectorXcd FockBasis::to_dense(const StateVector& state) const {
  if (state.num_modes() != num_modes_) {
    throw BasisMismatch("to_dense: state has " + std::to_string(state.num_modes()) +
                        " modes, basis has " + std::to_string(num_modes_));
  }
  Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size()));
  for (const auto& [occ, amp] : state) {
    auto idx = index_of(occ);
    if (!idx) throw BasisMismatch("to_dense: " + occ.to_string() + " is not in the basis");
    coords(static_cast<Eigen::Index>(*idx)) = amp;
  }
  return coords;
}

StateVector FockBasis::from_dense(const Eigen::Ref<const Eigen::VectorXcd>& coords) const {
  if (static_cast<std::size_t>(coords.size()) != size()) {
    throw BasisMismatch("from_dense: coordinate vector does not match basis size");
  }
  StateVector::Terms terms;
  for (std::size_t i = 0; i < size(); ++i) {
    terms.emplace(states_[i], coords(static_cast<Eigen::Index>(i)));
  }
  return {num_modes_, std::move(terms)};
}

}  // namespace fockretro
