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

#include "fockretro/retrodict.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

struct Signature {
  char label;
  std::array<int, 4> counts;
};

constexpr std::array<Signature, 7> kTwoSourceSignatures{{
    {'a', {2, 0, 0, 0}},
    {'b', {0, 2, 0, 0}},
    {'c', {1, 0, 0, 1}},
    {'d', {0, 1, 0, 1}},
    {'e', {1, 0, 1, 0}},
    {'f', {0, 1, 1, 0}},
    {'g', {0, 0, 1, 1}},
}};

void require_normalized(const StateVector& state, const char* op) {
  if (!state.is_normalized()) {
    throw InvalidArgument(std::string(op) + ": state is not normalized (|psi|^2 = " +
                          std::to_string(state.squared_norm()) + ")");
  }
}

void require_record_fits(const DetectionRecord& record, std::size_t num_modes, const char* op) {
  if (record.num_modes() != num_modes) {
    throw InvalidArgument(std::string(op) + ": record covers " +
                          std::to_string(record.num_modes()) + " modes, state has " +
                          std::to_string(num_modes));
  }
}

// Term-by-term register shift by +/- the photon count of each coupled mode.
JointState shift_registers(const JointState& joint, int direction) {
  const int d = joint.register_dim;
  StateVector::Terms terms;
  for (const auto& [occ, amp] : joint.state) {
    std::vector<int> counts(occ.counts().begin(), occ.counts().end());
    for (std::size_t k = 0; k < joint.detector_modes.size(); ++k) {
      const int n = occ[joint.detector_modes[k]];
      auto& level = counts[joint.field_modes + k];
      level = ((level + direction * n) % d + d) % d;
    }
    terms.emplace(Occupation(std::move(counts)), amp);
  }
  return {StateVector(joint.state.num_modes(), std::move(terms)), joint.field_modes,
          joint.detector_modes, d};
}

std::vector<std::size_t> register_indices(const JointState& joint) {
  std::vector<std::size_t> idx(joint.detector_modes.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = joint.field_modes + k;
  return idx;
}

}  // namespace

std::string History::name() const {
  if (label) return std::string("(") + *label + ")";
  return outcome.to_string();
}

std::vector<History> enumerate_histories(const StateVector& state) {
  require_normalized(state, "enumerate_histories");
  std::vector<History> histories;
  histories.reserve(state.size());
  for (const auto& [occ, amp] : state) {
    histories.push_back({occ, amp, std::norm(amp), std::nullopt});
  }
  return histories;
}

void label_two_source_histories(std::span<History> histories) {
  for (auto& h : histories) {
    if (h.outcome.num_modes() != 4) continue;
    for (const auto& sig : kTwoSourceSignatures) {
      if (std::equal(sig.counts.begin(), sig.counts.end(), h.outcome.counts().begin())) {
        h.label = sig.label;
        break;
      }
    }
  }
}

DetectionRecord::DetectionRecord(std::vector<std::optional<int>> entries)
    : entries_(std::move(entries)) {
  bool any = false;
  for (const auto& e : entries_) {
    if (!e) continue;
    if (*e < 0) throw InvalidArgument("DetectionRecord: negative photon count");
    any = true;
  }
  if (!any) throw InvalidArgument("DetectionRecord: at least one mode must be observed");
}

DetectionRecord DetectionRecord::complete(const Occupation& counts) {
  return DetectionRecord(std::vector<std::optional<int>>(counts.counts().begin(),
                                                         counts.counts().end()));
}

DetectionRecord DetectionRecord::partial(std::size_t num_modes,
                                         std::span<const std::pair<std::size_t, int>> observed) {
  std::vector<std::optional<int>> entries(num_modes);
  for (const auto& [mode, count] : observed) {
    if (mode >= num_modes) {
      throw InvalidArgument("DetectionRecord: detector " + std::to_string(mode + 1) +
                            " out of range for " + std::to_string(num_modes) + " modes");
    }
    entries[mode] = count;
  }
  return DetectionRecord(std::move(entries));
}

std::vector<std::size_t> DetectionRecord::observed_modes() const {
  std::vector<std::size_t> modes;
  for (std::size_t m = 0; m < entries_.size(); ++m) {
    if (entries_[m]) modes.push_back(m);
  }
  return modes;
}

std::vector<std::size_t> DetectionRecord::unobserved_modes() const {
  std::vector<std::size_t> modes;
  for (std::size_t m = 0; m < entries_.size(); ++m) {
    if (!entries_[m]) modes.push_back(m);
  }
  return modes;
}

bool DetectionRecord::matches(const Occupation& outcome) const {
  if (outcome.num_modes() != entries_.size()) return false;
  for (std::size_t m = 0; m < entries_.size(); ++m) {
    if (entries_[m] && *entries_[m] != outcome[m]) return false;
  }
  return true;
}

std::string DetectionRecord::to_string() const {
  std::string s;
  for (std::size_t m = 0; m < entries_.size(); ++m) {
    if (!entries_[m]) continue;
    if (!s.empty()) s += ',';
    s += 'd' + std::to_string(m + 1) + '=' + std::to_string(*entries_[m]);
  }
  return s;
}

double Posterior::of(const Occupation& outcome) const {
  for (const auto& e : entries) {
    if (e.history.outcome == outcome) return e.posterior;
  }
  return 0.0;
}

double Posterior::of(char label) const {
  for (const auto& e : entries) {
    if (e.history.label == label) return e.posterior;
  }
  return 0.0;
}

Posterior posterior(std::span<const History> histories, const DetectionRecord& record) {
  Posterior result{{}, 0.0};
  for (const auto& h : histories) {
    require_record_fits(record, h.outcome.num_modes(), "posterior");
    if (record.matches(h.outcome) && h.probability > 0.0) {
      result.entries.push_back({h, h.probability});
      result.evidence += h.probability;
    }
  }
  if (result.entries.empty()) {
    throw ImpossibleObservation("record " + record.to_string() +
                                " is inconsistent with every history");
  }
  for (auto& e : result.entries) e.posterior /= result.evidence;
  return result;
}

Conditioned condition(const StateVector& state, const DetectionRecord& record) {
  require_record_fits(record, state.num_modes(), "condition");
  const auto kept = record.unobserved_modes();
  if (kept.empty()) {
    throw InvalidArgument("condition: record observes every mode; nothing is left to condition");
  }
  StateVector::Terms projected;
  for (const auto& [occ, amp] : state) {
    if (record.matches(occ)) projected[occ.select(kept)] += amp;
  }
  StateVector residual(kept.size(), std::move(projected));
  const double p = residual.squared_norm() / state.squared_norm();
  if (residual.empty() || p == 0.0) {
    throw ImpossibleObservation("record " + record.to_string() + " has zero probability");
  }
  return {normalize(residual).state, p};
}

MixedConditioned mixed_condition(const StateVector& state,
                                 std::span<const DetectionRecord> alternatives) {
  if (alternatives.empty()) throw InvalidArgument("mixed_condition: no alternatives");
  const auto observed = alternatives.front().observed_modes();
  for (const auto& alt : alternatives) {
    require_record_fits(alt, state.num_modes(), "mixed_condition");
    if (alt.observed_modes() != observed) {
      throw InvalidArgument("mixed_condition: alternatives must observe the same modes");
    }
  }
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    for (std::size_t b = a + 1; b < alternatives.size(); ++b) {
      bool differ = false;
      for (auto m : observed) differ = differ || alternatives[a][m] != alternatives[b][m];
      if (!differ) {
        throw InvalidArgument("mixed_condition: alternatives " + alternatives[a].to_string() +
                              " and " + alternatives[b].to_string() +
                              " are not mutually exclusive");
      }
    }
  }

  std::vector<double> weights;
  std::vector<StateVector> residuals;
  double total = 0.0;
  int max_photons = 0;
  for (const auto& alt : alternatives) {
    try {
      auto c = condition(state, alt);
      max_photons = std::max(max_photons, c.residual.max_photons());
      weights.push_back(c.probability);
      residuals.push_back(std::move(c.residual));
      total += c.probability;
    } catch (const ImpossibleObservation&) {
      weights.push_back(0.0);
      residuals.emplace_back(state.num_modes() - observed.size());
    }
  }
  if (total == 0.0) {
    throw ImpossibleObservation("mixed_condition: every alternative has zero probability");
  }

  const FockBasis basis = FockBasis::up_to(state.num_modes() - observed.size(), max_photons);
  std::vector<DensityOperator> dyads;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] /= total;
    dyads.push_back(weights[k] > 0.0
                        ? dyad(residuals[k], basis)
                        : DensityOperator(basis, Eigen::MatrixXcd::Zero(
                                                     static_cast<Eigen::Index>(basis.size()),
                                                     static_cast<Eigen::Index>(basis.size()))));
  }
  return {weighted_sum(weights, dyads), std::move(weights)};
}

JointState attach_registers(const StateVector& field, std::span<const std::size_t> modes) {
  if (modes.empty()) throw InvalidArgument("attach_registers: no detector modes");
  std::vector<std::size_t> detectors(modes.begin(), modes.end());
  for (auto m : detectors) {
    if (m >= field.num_modes()) {
      throw InvalidArgument("attach_registers: mode " + std::to_string(m) + " out of range");
    }
  }
  if (std::set<std::size_t>(detectors.begin(), detectors.end()).size() != detectors.size()) {
    throw InvalidArgument("attach_registers: duplicate detector mode");
  }
  const StateVector ground = StateVector::basis_state(Occupation::zeros(detectors.size()));
  return {tensor(field, ground), field.num_modes(), std::move(detectors),
          field.max_photons() + 1};
}

JointState couple(const JointState& joint) {
  const auto regs = register_indices(joint);
  for (const auto& [occ, amp] : joint.state) {
    for (auto r : regs) {
      if (occ[r] != 0) {
        throw InvalidArgument("couple: detector register for mode " +
                              std::to_string(joint.detector_modes[r - joint.field_modes]) +
                              " is not in its ground level");
      }
    }
  }
  return shift_registers(joint, +1);
}

JointState decouple(const JointState& joint) { return shift_registers(joint, -1); }

JointState couple_detectors(const StateVector& field, std::span<const std::size_t> modes) {
  return couple(attach_registers(field, modes));
}

StateVector detach_registers(const JointState& joint) {
  const auto regs = register_indices(joint);
  std::vector<std::size_t> field_idx(joint.field_modes);
  for (std::size_t m = 0; m < field_idx.size(); ++m) field_idx[m] = m;
  StateVector::Terms terms;
  for (const auto& [occ, amp] : joint.state) {
    for (auto r : regs) {
      if (occ[r] != 0) {
        throw InvalidArgument("detach_registers: registers are still entangled with the field");
      }
    }
    terms.emplace(occ.select(field_idx), amp);
  }
  return {joint.field_modes, std::move(terms)};
}

std::vector<std::pair<Occupation, double>> register_distribution(const JointState& joint) {
  const auto regs = register_indices(joint);
  std::map<Occupation, double> dist;
  for (const auto& [occ, amp] : joint.state) dist[occ.select(regs)] += std::norm(amp);
  return {dist.begin(), dist.end()};
}

std::vector<std::pair<Occupation, double>> register_posterior(const JointState& joint,
                                                              const DetectionRecord& record) {
  require_record_fits(record, joint.field_modes, "register_posterior");
  const auto& dm = joint.detector_modes;
  for (auto m : record.observed_modes()) {
    if (std::find(dm.begin(), dm.end(), m) == dm.end()) {
      throw InvalidArgument("register_posterior: detector " + std::to_string(m + 1) +
                            " is not coupled");
    }
  }
  std::vector<std::pair<Occupation, double>> out;
  double evidence = 0.0;
  for (const auto& [reading, p] : register_distribution(joint)) {
    bool consistent = true;
    for (std::size_t k = 0; k < dm.size(); ++k) {
      if (record[dm[k]] && *record[dm[k]] != reading[k]) consistent = false;
    }
    if (consistent && p > 0.0) {
      out.emplace_back(reading, p);
      evidence += p;
    }
  }
  if (out.empty()) {
    throw ImpossibleObservation("record " + record.to_string() +
                                " is inconsistent with every register reading");
  }
  for (auto& [reading, p] : out) p /= evidence;
  return out;
}

}  // namespace fockretro
