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

#include "fockretro/classical.hpp"

#include <cmath>
#include <string>

#include "fockretro/errors.hpp"

namespace fockretro {

FieldState::FieldState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw InvalidArgument("FieldState: no modes");
  if (!amplitudes_.allFinite()) throw InvalidArgument("FieldState: non-finite amplitude");
}

FieldState FieldState::dark(std::size_t num_modes) {
  return FieldState(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_modes)));
}

FieldState FieldState::source(std::size_t num_modes, std::size_t mode, double intensity,
                              double phase) {
  if (mode >= num_modes) throw InvalidArgument("FieldState: source mode out of range");
  if (intensity < 0.0) throw InvalidArgument("FieldState: negative intensity");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_modes));
  a(static_cast<Eigen::Index>(mode)) = std::polar(std::sqrt(intensity), phase);
  return FieldState(std::move(a));
}

FieldState FieldState::restricted_to(std::span<const std::size_t> observed) const {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(amplitudes_.size());
  for (auto m : observed) {
    if (m >= num_modes()) throw InvalidArgument("FieldState: observed mode out of range");
    const auto k = static_cast<Eigen::Index>(m);
    a(k) = amplitudes_(k);
  }
  return FieldState(std::move(a));
}

FieldState operator+(const FieldState& a, const FieldState& b) {
  if (a.num_modes() != b.num_modes()) throw InvalidArgument("FieldState: mode count mismatch");
  return FieldState(a.amplitudes() + b.amplitudes());
}

IncoherentEnsemble::IncoherentEnsemble(std::vector<Member> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InvalidArgument("IncoherentEnsemble: no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (m.weight < 0.0) throw InvalidArgument("IncoherentEnsemble: negative weight");
    if (m.field.num_modes() != members_.front().field.num_modes()) {
      throw InvalidArgument("IncoherentEnsemble: members have different mode counts");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("IncoherentEnsemble: weights sum to " + std::to_string(total));
  }
}

FieldState propagate(const FieldState& fields, const Circuit& circuit) {
  if (fields.num_modes() != circuit.num_modes()) {
    throw InvalidArgument("propagate: field has " + std::to_string(fields.num_modes()) +
                          " modes, circuit has " + std::to_string(circuit.num_modes()));
  }
  Eigen::VectorXcd a = fields.amplitudes();
  for (const auto& e : circuit.elements()) {
    const auto i = static_cast<Eigen::Index>(e.first_mode());
    const auto j = static_cast<Eigen::Index>(e.second_mode());
    const Eigen::Vector2cd in(a(i), a(j));
    const Eigen::Vector2cd out = e.matrix() * in;
    a(i) = out(0);
    a(j) = out(1);
  }
  return FieldState(std::move(a));
}

FieldState back_propagate(const FieldState& fields_at_outputs, const Circuit& circuit) {
  return propagate(fields_at_outputs, invert(circuit));
}

Eigen::VectorXd incoherent_mix(const IncoherentEnsemble& ensemble, const Circuit& circuit) {
  Eigen::VectorXd mean =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(circuit.num_modes()));
  for (const auto& m : ensemble.members()) {
    mean += m.weight * propagate(m.field, circuit).intensities();
  }
  return mean;
}

}  // namespace fockretro
