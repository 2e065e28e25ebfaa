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

#include "fockretro/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <sstream>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

template <typename E>
[[noreturn]] void rethrow_with(const std::string& context, const E& e) {
  if constexpr (std::is_same_v<E, InvalidElement>) {
    throw InvalidElement(context + e.what(), e.deviation());
  } else {
    throw E(context + e.what());
  }
}

void check_sums_to_one(double total, const std::string& table) {
  if (std::abs(total - 1.0) > kReportTolerance) {
    throw ValidationError(table + " sums to " + format_real(total) + ", not 1");
  }
}

std::vector<FieldState> classical_sources(const Scenario& sc) {
  std::vector<FieldState> out;
  for (std::size_t k = 0; k < sc.sources.size(); ++k) {
    out.push_back(FieldState::source(sc.num_modes, sc.sources[k], sc.intensities[k], sc.phases[k]));
  }
  return out;
}

// Incoherent emission: average over relative source phases in quarter turns,
// which cancels every cross term exactly.
IncoherentEnsemble phase_averaged(const Scenario& sc) {
  const auto sources = classical_sources(sc);
  const std::size_t n = sources.size();
  std::size_t combos = 1;
  for (std::size_t k = 1; k < n; ++k) combos *= 4;
  std::vector<IncoherentEnsemble::Member> members;
  for (std::size_t c = 0; c < combos; ++c) {
    FieldState sum = sources[0];
    std::size_t code = c;
    for (std::size_t k = 1; k < n; ++k) {
      const double turn = static_cast<double>(code % 4) * std::numbers::pi / 2;
      code /= 4;
      sum = sum + FieldState(sources[k].amplitudes() * std::polar(1.0, turn));
    }
    members.push_back({sum, 1.0 / static_cast<double>(combos)});
  }
  return IncoherentEnsemble(std::move(members));
}

FieldState coherent_input(const Scenario& sc) {
  FieldState sum = FieldState::dark(sc.num_modes);
  for (const auto& f : classical_sources(sc)) sum = sum + f;
  return sum;
}

std::vector<std::size_t> retained_arms(const Scenario& sc) {
  std::vector<std::size_t> arms;
  if (sc.observations.empty()) {
    for (std::size_t m = 0; m < sc.num_modes; ++m) arms.push_back(m);
    return arms;
  }
  for (const auto& [mode, value] : sc.observations) {
    if (value != 0) arms.push_back(mode);
  }
  return arms;
}

void run_classical(const Scenario& sc, const Circuit& circuit, Report& report) {
  const bool backprop = sc.regime == Regime::kClassicalBackprop;
  const auto arms = retained_arms(sc);

  if (sc.coherence == Coherence::kCoherent) {
    const FieldState input = coherent_input(sc);
    const FieldState output = propagate(input, circuit);
    report.intensity_tables.push_back({"input", input.intensities()});
    report.intensity_tables.push_back({"output", output.intensities()});
    if (backprop) {
      const FieldState retained = output.restricted_to(arms);
      report.intensity_tables.push_back({"retained", retained.intensities()});
      report.intensity_tables.push_back({"back", back_propagate(retained, circuit).intensities()});
    }
    return;
  }

  const IncoherentEnsemble ensemble = phase_averaged(sc);
  const auto n = static_cast<Eigen::Index>(sc.num_modes);
  Eigen::VectorXd input = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd retained = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd back = Eigen::VectorXd::Zero(n);
  for (const auto& m : ensemble.members()) {
    input += m.weight * m.field.intensities();
    const FieldState kept = propagate(m.field, circuit).restricted_to(arms);
    retained += m.weight * kept.intensities();
    back += m.weight * back_propagate(kept, circuit).intensities();
  }
  report.intensity_tables.push_back({"input", input});
  report.intensity_tables.push_back({"output", incoherent_mix(ensemble, circuit)});
  if (backprop) {
    report.intensity_tables.push_back({"retained", retained});
    report.intensity_tables.push_back({"back", back});
  }
}

void run_quantum(const Scenario& sc, const Circuit& circuit, Report& report) {
  const StateVector forward = run_circuit(circuit, sc.initial_state());
  report.histories = enumerate_histories(forward);
  if (sc.is_two_source_apparatus()) label_two_source_histories(report.histories);

  double total = 0.0;
  for (const auto& h : report.histories) total += h.probability;
  check_sums_to_one(total, "history table");

  for (std::size_t m = 0; m < sc.num_modes; ++m) {
    auto p = count_distribution(forward, m);
    double s = 0.0;
    for (double x : p) s += x;
    check_sums_to_one(s, "count distribution d" + std::to_string(m + 1));
    report.count_distributions.push_back(std::move(p));
  }

  report.record = sc.record();
  if (!report.record) return;
  report.posterior = posterior(report.histories, *report.record);
  double post = 0.0;
  for (const auto& e : report.posterior->entries) post += e.posterior;
  check_sums_to_one(post, "posterior table");

  report.reduced = partial_trace(forward, report.record->observed_modes());
  if (!report.record->unobserved_modes().empty()) {
    report.conditioned = condition(forward, *report.record);
  }
}

std::string occupation_label(const Occupation& occ) { return occ.to_string(); }

std::string mode_label(std::size_t m) { return "m" + std::to_string(m + 1); }

void echo_scenario(const Scenario& sc, std::ostream& out, char sep) {
  out << "scenario" << sep << "name" << sep << (sc.name.empty() ? "-" : sc.name) << '\n';
  out << "scenario" << sep << "regime" << sep << to_string(sc.regime) << '\n';
  out << "scenario" << sep << "modes" << sep << sc.num_modes << '\n';
  if (sc.regime == Regime::kQuantum) {
    out << "scenario" << sep << "initial" << sep << sc.initial_occupation().to_string() << '\n';
  } else {
    out << "scenario" << sep << "coherence" << sep << to_string(sc.coherence) << '\n';
    for (std::size_t k = 0; k < sc.sources.size(); ++k) {
      out << "source" << sep << mode_label(sc.sources[k]) << sep
          << format_real(sc.intensities[k]) << sep << format_real(sc.phases[k]) << '\n';
    }
  }
  const Circuit circuit = sc.circuit();
  for (std::size_t k = 0; k < circuit.elements().size(); ++k) {
    const auto& e = circuit.elements()[k];
    out << "element" << sep << 'e' << k + 1 << sep << '(' << e.first_mode() + 1 << ','
        << e.second_mode() + 1 << ')';
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out << sep << format_real(e.matrix()(r, c).real()) << sep
            << format_real(e.matrix()(r, c).imag());
      }
    }
    out << '\n';
  }
}

// Column-aligned rendering of rows of cells.
std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += line + '\n';
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  const std::string context =
      "scenario '" + (scenario.name.empty() ? std::string("unnamed") : scenario.name) + "': ";
  try {
    Report report{scenario, {}, {}, {}, {}, {}, {}, {}, {}};
    const Circuit circuit = scenario.circuit();
    if (scenario.regime == Regime::kQuantum) {
      run_quantum(scenario, circuit, report);
    } else {
      run_classical(scenario, circuit, report);
    }
    if (options.oracle) {
      report.oracle_deviation = oracle_check(scenario);
      if (*report.oracle_deviation >= kReportTolerance) {
        throw ValidationError("dense oracle deviates by " +
                              format_real(*report.oracle_deviation));
      }
    }
    return report;
  } catch (const ImpossibleObservation& e) {
    rethrow_with(context, e);
  } catch (const InvalidElement& e) {
    rethrow_with(context, e);
  } catch (const ValidationError& e) {
    rethrow_with(context, e);
  } catch (const ResourceError& e) {
    rethrow_with(context, e);
  } catch (const InvalidArgument& e) {
    rethrow_with(context, e);
  }
}

std::vector<SweepPoint> sweep(const Scenario& scenario, const std::string& parameter,
                              const std::vector<double>& values, const RunOptions& options) {
  std::vector<Scenario> grid;
  grid.reserve(values.size());
  for (double v : values) grid.push_back(with_parameter(scenario, parameter, v));

  std::vector<std::future<Report>> pending;
  pending.reserve(grid.size());
  for (const auto& sc : grid) {
    pending.push_back(std::async(std::launch::async, [&sc, &options] {
      return run_scenario(sc, options);
    }));
  }
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) points.push_back({parameter, values[k], pending[k].get()});
  return points;
}

std::vector<SweepPoint> sweep(const Scenario& scenario, const SweepSpec& spec,
                              const RunOptions& options) {
  return sweep(scenario, spec.parameter, spec.values(), options);
}

double oracle_check(const Scenario& scenario) {
  if (scenario.regime != Regime::kQuantum) {
    throw InvalidArgument("oracle_check: only the quantum regime has a Fock-space oracle");
  }
  const Occupation initial = scenario.initial_occupation();
  const FockBasis basis = FockBasis::fixed_total(scenario.num_modes, initial.total());
  if (basis.size() > kMaxOracleBasis) {
    throw ResourceError("oracle_check: basis has " + std::to_string(basis.size()) +
                        " states, limit is " + std::to_string(kMaxOracleBasis));
  }
  const Circuit circuit = scenario.circuit();
  Eigen::VectorXcd dense = basis.to_dense(scenario.initial_state());
  for (const auto& e : circuit.elements()) {
    dense = lift_to_dense(e, scenario.num_modes, basis) * dense;
  }
  const Eigen::VectorXcd sparse = basis.to_dense(run_circuit(circuit, scenario.initial_state()));
  return dense.size() == 0 ? 0.0 : (dense - sparse).cwiseAbs().maxCoeff();
}

std::string format_tsv(const Report& report) {
  std::ostringstream out;
  const Scenario& sc = report.scenario;
  echo_scenario(sc, out, '\t');

  for (const auto& h : report.histories) {
    out << "history\t" << h.name() << '\t' << occupation_label(h.outcome) << '\t'
        << format_real(h.amplitude.real()) << '\t' << format_real(h.amplitude.imag()) << '\t'
        << format_real(h.probability) << '\n';
  }
  for (std::size_t m = 0; m < report.count_distributions.size(); ++m) {
    const auto& p = report.count_distributions[m];
    for (std::size_t n = 0; n < p.size(); ++n) {
      out << "count\td" << m + 1 << '\t' << n << '\t' << format_real(p[n]) << '\n';
    }
  }
  if (report.record) out << "observe\t" << report.record->to_string() << '\n';
  if (report.posterior) {
    for (const auto& e : report.posterior->entries) {
      out << "posterior\t" << e.history.name() << '\t' << occupation_label(e.history.outcome)
          << '\t' << format_real(e.history.probability) << '\t' << format_real(e.posterior)
          << '\n';
    }
  }
  if (report.reduced) {
    const auto& rho = *report.reduced;
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
      for (std::size_t c = 0; c < rho.dimension(); ++c) {
        const Complex v =
            rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        out << "reduced\t" << rho.basis()[r].to_string() << '\t' << rho.basis()[c].to_string()
            << '\t' << format_real(v.real()) << '\t' << format_real(v.imag()) << '\n';
      }
    }
  }
  if (report.conditioned) {
    out << "conditioned\tprobability\t" << format_real(report.conditioned->probability) << '\n';
    for (const auto& [occ, amp] : report.conditioned->residual) {
      out << "conditioned\t" << occ.to_string() << '\t' << format_real(amp.real()) << '\t'
          << format_real(amp.imag()) << '\n';
    }
  }
  for (const auto& table : report.intensity_tables) {
    const double total = table.intensities.sum();
    for (Eigen::Index m = 0; m < table.intensities.size(); ++m) {
      const double v = table.intensities(m);
      out << "intensity\t" << table.title << '\t' << mode_label(static_cast<std::size_t>(m))
          << '\t' << format_real(v) << '\t' << format_real(total > 0.0 ? v / total : 0.0) << '\n';
    }
  }
  if (report.oracle_deviation) {
    out << "oracle\tmax_deviation\t" << format_real(*report.oracle_deviation) << '\n';
  }
  return out.str();
}

std::string format_tsv(const std::vector<SweepPoint>& points) {
  std::string out;
  for (const auto& p : points) {
    out += "sweep\t" + p.parameter + '\t' + format_real(p.value) + '\n';
    out += format_tsv(p.report);
  }
  return out;
}

std::string format_table(const Report& report) {
  std::ostringstream out;
  const Scenario& sc = report.scenario;
  out << "Scenario " << (sc.name.empty() ? "(unnamed)" : sc.name) << ": " << to_string(sc.regime)
      << ", " << sc.num_modes << " modes";
  if (sc.regime == Regime::kQuantum) out << ", initial " << sc.initial_occupation().to_string();
  out << "\n";
  const Circuit circuit = sc.circuit();
  for (std::size_t k = 0; k < circuit.elements().size(); ++k) {
    const auto& e = circuit.elements()[k];
    out << "  e" << k + 1 << " on (" << e.first_mode() + 1 << "," << e.second_mode() + 1
        << "): |t|^2 = " << format_real(std::norm(e.transmission()))
        << ", |r|^2 = " << format_real(std::norm(e.reflection())) << "\n";
  }

  if (!report.histories.empty()) {
    out << "\nHistories\n";
    std::vector<std::vector<std::string>> rows{{"history", "outcome", "amplitude", "probability"}};
    for (const auto& h : report.histories) {
      rows.push_back({h.name(), h.outcome.to_string(),
                      format_real(h.amplitude.real()) + (h.amplitude.imag() < 0 ? " - " : " + ") +
                          format_real(std::abs(h.amplitude.imag())) + "i",
                      format_real(h.probability)});
    }
    out << align(rows);

    out << "\nCount distributions\n";
    std::vector<std::vector<std::string>> counts{{"detector"}};
    std::size_t width = 0;
    for (const auto& p : report.count_distributions) width = std::max(width, p.size());
    for (std::size_t n = 0; n < width; ++n) counts[0].push_back("P" + std::to_string(n));
    for (std::size_t m = 0; m < report.count_distributions.size(); ++m) {
      std::vector<std::string> row{"d" + std::to_string(m + 1)};
      for (std::size_t n = 0; n < width; ++n) {
        const auto& p = report.count_distributions[m];
        row.push_back(format_real(n < p.size() ? p[n] : 0.0));
      }
      counts.push_back(std::move(row));
    }
    out << align(counts);
  }

  if (report.posterior) {
    out << "\nPosterior given " << report.record->to_string() << " (evidence "
        << format_real(report.posterior->evidence) << ")\n";
    std::vector<std::vector<std::string>> rows{{"history", "outcome", "prior", "posterior"}};
    for (const auto& e : report.posterior->entries) {
      rows.push_back({e.history.name(), e.history.outcome.to_string(),
                      format_real(e.history.probability), format_real(e.posterior)});
    }
    out << align(rows);
  }
  if (report.reduced) {
    out << "\nReduced density matrix on the observed detectors\n";
    const auto& rho = *report.reduced;
    std::vector<std::vector<std::string>> rows{{""}};
    for (const auto& occ : rho.basis()) rows[0].push_back(occ.to_string());
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
      std::vector<std::string> row{rho.basis()[r].to_string()};
      for (std::size_t c = 0; c < rho.dimension(); ++c) {
        const Complex v =
            rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        row.push_back(v.imag() == 0.0 ? format_real(v.real())
                                      : format_real(v.real()) + "," + format_real(v.imag()) + "i");
      }
      rows.push_back(std::move(row));
    }
    out << align(rows);
  }
  if (report.conditioned) {
    out << "\nConditioned state on the unobserved modes (probability "
        << format_real(report.conditioned->probability) << ")\n";
    std::vector<std::vector<std::string>> rows{{"outcome", "re", "im"}};
    for (const auto& [occ, amp] : report.conditioned->residual) {
      rows.push_back({occ.to_string(), format_real(amp.real()), format_real(amp.imag())});
    }
    out << align(rows);
  }
  for (const auto& table : report.intensity_tables) {
    out << "\nIntensities: " << table.title << "\n";
    std::vector<std::vector<std::string>> rows{{"mode", "intensity", "fraction"}};
    const double total = table.intensities.sum();
    for (Eigen::Index m = 0; m < table.intensities.size(); ++m) {
      const double v = table.intensities(m);
      rows.push_back({mode_label(static_cast<std::size_t>(m)), format_real(v),
                      format_real(total > 0.0 ? v / total : 0.0)});
    }
    out << align(rows);
  }
  if (report.oracle_deviation) {
    out << "\nDense oracle max deviation: " << format_real(*report.oracle_deviation) << "\n";
  }
  return out.str();
}

std::string format_table(const std::vector<SweepPoint>& points) {
  std::string out;
  for (const auto& p : points) {
    out += "=== " + p.parameter + " = " + format_real(p.value) + " ===\n";
    out += format_table(p.report) + "\n";
  }
  return out;
}

}  // namespace fockretro
