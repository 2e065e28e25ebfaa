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

#include "fockretro/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "fockretro/errors.hpp"

namespace fockretro {

namespace {

constexpr std::string_view kSinglePhoton = R"(# One photon from S meets a 50:50 beam splitter.
# Mode 1 runs from S to detector D, mode 2 from the floor F to the ceiling C.
[scenario]
name = single-photon
modes = 2
photons = 1
regime = quantum

[element]
modes = 1,2
transmittance = 0.5
r_phase = pi/2
t_phase = 0
)";

constexpr std::string_view kPenroseFig3 = R"(# Two single-photon sources behind unbalanced beam splitters feeding a 50:50
# beam splitter; detectors D1..D4 on modes 1..4.
# |t_A|^2 = 0.99 and |r_B|^2 = 0.96 are illustrative defaults.
[scenario]
name = penrose-fig3
modes = 4
photons = 1,2
regime = quantum

# BS_A: source A leaks into mode 3 with probability |r_A|^2
[element]
modes = 1,3
transmittance = 0.99

# BS_B: source B reaches the 50:50 splitter with probability |t_B|^2
[element]
modes = 2,4
transmittance = 0.04

# 50:50 splitter, t = 1/sqrt(2), r = i/sqrt(2)
[element]
modes = 1,2
transmittance = 0.5

[observe]
d1 = 1
)";

constexpr std::string_view kPenroseClassical = R"(# Bright classical source S of unit intensity through a 50:50 beam splitter,
# then both output arms propagated back to the sources.
[scenario]
name = penrose-classical
modes = 2
photons = 1
regime = classical-backprop
intensities = 1

[element]
modes = 1,2
transmittance = 0.5
)";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  std::size_t line;
};

struct Section {
  std::string name;
  std::size_t line;
  std::map<std::string, Entry> entries;
};

class Reader {
 public:
  explicit Reader(const Section& section) : section_(section) {}

  bool has(const std::string& key) const { return section_.entries.contains(key); }

  const Entry& entry(const std::string& key) const {
    auto it = section_.entries.find(key);
    if (it == section_.entries.end()) {
      throw SemanticError(key, "required in [" + section_.name + "] section starting on line " +
                                   std::to_string(section_.line));
    }
    return it->second;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    auto it = section_.entries.find(key);
    const std::size_t line = it == section_.entries.end() ? section_.line : it->second.line;
    throw SemanticError(key, what + " (line " + std::to_string(line) + ")");
  }

  double real(const std::string& key) const {
    auto v = to_double(entry(key).value);
    if (!v || !std::isfinite(*v)) fail(key, "expected a number, got '" + entry(key).value + "'");
    return *v;
  }

  // Number optionally scaled by pi: "1.2", "pi", "-pi/2", "0.25*pi", "3*pi/4".
  double angle(const std::string& key) const {
    const std::string& text = entry(key).value;
    std::string_view s = trim(text);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return real(key);
    double factor = 1.0;
    double divisor = 1.0;
    std::string_view head = trim(s.substr(0, pi_pos));
    std::string_view tail = trim(s.substr(pi_pos + 2));
    bool ok = true;
    if (!head.empty()) {
      if (head == "-") {
        factor = -1.0;
      } else if (head.back() == '*') {
        auto f = to_double(head.substr(0, head.size() - 1));
        ok = f.has_value();
        if (ok) factor = *f;
      } else {
        ok = false;
      }
    }
    if (ok && !tail.empty()) {
      if (tail.front() != '/') {
        ok = false;
      } else {
        auto d = to_double(tail.substr(1));
        ok = d.has_value() && *d != 0.0;
        if (ok) divisor = *d;
      }
    }
    if (!ok) fail(key, "expected an angle in radians, got '" + text + "'");
    return factor * std::numbers::pi / divisor;
  }

  long integer(const std::string& key) const {
    auto v = to_long(entry(key).value);
    if (!v) fail(key, "expected an integer, got '" + entry(key).value + "'");
    return *v;
  }

  std::vector<std::string_view> list(const std::string& key) const {
    const std::string& text = entry(key).value;
    if (trim(text).empty()) return {};
    return split(text, ',');
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (auto part : list(key)) {
      auto v = to_double(part);
      if (!v || !std::isfinite(*v)) fail(key, "expected numbers, got '" + std::string(part) + "'");
      out.push_back(*v);
    }
    return out;
  }

  std::vector<std::size_t> modes(const std::string& key, std::size_t num_modes) const {
    std::vector<std::size_t> out;
    for (auto part : list(key)) {
      auto v = to_long(part);
      if (!v) fail(key, "expected mode numbers, got '" + std::string(part) + "'");
      if (*v < 1 || static_cast<std::size_t>(*v) > num_modes) {
        fail(key, "mode " + std::to_string(*v) + " out of range 1.." + std::to_string(num_modes));
      }
      out.push_back(static_cast<std::size_t>(*v - 1));
    }
    return out;
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, entry] : section_.entries) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw SemanticError(key, "unknown key in [" + section_.name + "] (line " +
                                     std::to_string(entry.line) + ")");
      }
    }
  }

 private:
  const Section& section_;
};

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string> known{"scenario", "element", "observe", "sweep"};
      if (!known.contains(name)) throw ParseError("unknown section [" + name + "]", line_no);
      sections.push_back({name, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("missing key before '='", line_no);
    if (sections.empty()) throw ParseError("'" + key + "' appears before any section", line_no);
    auto& entries = sections.back().entries;
    if (entries.contains(key)) {
      throw SemanticError(key, "duplicate key (line " + std::to_string(line_no) + ")");
    }
    entries.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }
  return sections;
}

Regime parse_regime(const Reader& r) {
  const std::string& v = r.entry("regime").value;
  if (v == "quantum") return Regime::kQuantum;
  if (v == "classical") return Regime::kClassical;
  if (v == "classical-backprop") return Regime::kClassicalBackprop;
  r.fail("regime", "expected quantum, classical or classical-backprop, got '" + v + "'");
}

ElementSpec parse_element(const Section& section, std::size_t num_modes, std::size_t index) {
  Reader r(section);
  r.allow_only({"modes", "transmittance", "r_phase", "t_phase", "matrix"});
  ElementSpec spec;
  spec.line = section.line;
  const auto modes = r.modes("modes", num_modes);
  if (modes.size() != 2 || modes[0] == modes[1]) {
    r.fail("modes", "element " + std::to_string(index) + " needs two distinct modes");
  }
  spec.first_mode = modes[0];
  spec.second_mode = modes[1];

  const bool polar = r.has("transmittance") || r.has("r_phase") || r.has("t_phase");
  if (polar && r.has("matrix")) {
    r.fail("matrix", "element " + std::to_string(index) +
                         " mixes 'matrix' with transmittance/phase keys");
  }
  if (r.has("matrix")) {
    const auto v = r.reals("matrix");
    if (v.size() != 8) r.fail("matrix", "expected 8 numbers (re,im for M00 M01 M10 M11)");
    Eigen::Matrix2cd m;
    m << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
    spec.parameters = m;
  } else {
    PolarParameters p{};
    p.transmittance = r.real("transmittance");
    if (p.transmittance < 0.0 || p.transmittance > 1.0) {
      r.fail("transmittance", "must lie in [0, 1], got " + r.entry("transmittance").value);
    }
    p.r_phase = r.has("r_phase") ? r.angle("r_phase") : std::numbers::pi / 2;
    p.t_phase = r.has("t_phase") ? r.angle("t_phase") : 0.0;
    spec.parameters = p;
  }
  spec.build(index);
  return spec;
}

SweepSpec parse_sweep_section(const Section& section) {
  Reader r(section);
  r.allow_only({"parameter", "from", "to", "steps", "scale"});
  SweepSpec spec{r.entry("parameter").value, r.real("from"), r.real("to"),
                 static_cast<int>(r.integer("steps")), false};
  if (spec.steps < 1) r.fail("steps", "must be at least 1");
  if (r.has("scale")) {
    const auto& v = r.entry("scale").value;
    if (v == "log") {
      spec.log_scale = true;
    } else if (v != "linear") {
      r.fail("scale", "expected linear or log, got '" + v + "'");
    }
  }
  if (spec.log_scale && (spec.from <= 0.0 || spec.to <= 0.0)) {
    r.fail("from", "log sweep needs positive endpoints");
  }
  return spec;
}

void check_observations(const Scenario& s) {
  if (s.regime == Regime::kClassical && !s.observations.empty()) {
    throw SemanticError("observe", "the classical regime has no detection record");
  }
  for (const auto& [mode, value] : s.observations) {
    if (value < 0) {
      throw SemanticError("d" + std::to_string(mode + 1), "count must be non-negative");
    }
  }
}

std::size_t element_index(std::string_view parameter, std::string_view& field) {
  if (parameter.size() < 3 || parameter.front() != 'e') return 0;
  const auto dot = parameter.find('.');
  if (dot == std::string_view::npos) return 0;
  auto k = to_long(parameter.substr(1, dot - 1));
  if (!k || *k < 1) return 0;
  field = parameter.substr(dot + 1);
  return static_cast<std::size_t>(*k);
}

PolarParameters& polar_of(Scenario& s, std::size_t k, std::string_view parameter) {
  if (k > s.elements.size()) {
    throw SemanticError(std::string(parameter), "scenario has " +
                                                    std::to_string(s.elements.size()) +
                                                    " elements");
  }
  auto* p = std::get_if<PolarParameters>(&s.elements[k - 1].parameters);
  if (!p) {
    throw SemanticError(std::string(parameter),
                        "element " + std::to_string(k) + " is given as a raw matrix");
  }
  return *p;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kQuantum:
      return "quantum";
    case Regime::kClassical:
      return "classical";
    case Regime::kClassicalBackprop:
      return "classical-backprop";
  }
  return "?";
}

std::string_view to_string(Coherence coherence) {
  return coherence == Coherence::kCoherent ? "coherent" : "incoherent";
}

BeamSplitter ElementSpec::build(std::size_t index) const {
  try {
    if (const auto* p = std::get_if<PolarParameters>(&parameters)) {
      const Complex t = std::polar(std::sqrt(p->transmittance), p->t_phase);
      const Complex r = std::polar(std::sqrt(1.0 - p->transmittance), p->r_phase);
      return BeamSplitter::symmetric(t, r, first_mode, second_mode);
    }
    return BeamSplitter::from_matrix(std::get<Eigen::Matrix2cd>(parameters), first_mode,
                                     second_mode);
  } catch (const InvalidElement& e) {
    std::string where = "element " + std::to_string(index);
    if (line) where += " (line " + std::to_string(line) + ")";
    throw InvalidElement(where + ": " + e.what(), e.deviation());
  }
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {from};
  for (int k = 0; k < steps; ++k) {
    const double u = static_cast<double>(k) / (steps - 1);
    out.push_back(log_scale
                      ? std::pow(10.0, std::log10(from) + u * (std::log10(to) - std::log10(from)))
                      : from + u * (to - from));
  }
  out.front() = from;
  out.back() = to;
  return out;
}

Circuit Scenario::circuit() const {
  std::vector<BeamSplitter> built;
  for (std::size_t k = 0; k < elements.size(); ++k) built.push_back(elements[k].build(k + 1));
  return Circuit(num_modes, std::move(built));
}

Occupation Scenario::initial_occupation() const {
  std::vector<int> counts(num_modes, 0);
  for (auto m : sources) ++counts.at(m);
  return Occupation(std::move(counts));
}

StateVector Scenario::initial_state() const {
  return StateVector::basis_state(initial_occupation());
}

std::optional<DetectionRecord> Scenario::record() const {
  if (observations.empty()) return std::nullopt;
  return DetectionRecord::partial(num_modes, observations);
}

bool Scenario::is_two_source_apparatus() const {
  if (num_modes != 4 || elements.size() != 3) return false;
  if (initial_occupation() != Occupation{1, 1, 0, 0}) return false;
  auto on = [](const ElementSpec& e, std::size_t a, std::size_t b) {
    return std::minmax(e.first_mode, e.second_mode) == std::minmax(a, b);
  };
  return on(elements[0], 0, 2) && on(elements[1], 1, 3) && on(elements[2], 0, 1);
}

Scenario parse_scenario(std::string_view text) {
  const auto sections = tokenize(text);
  const Section* head = nullptr;
  for (const auto& s : sections) {
    if (s.name != "scenario") continue;
    if (head) throw ParseError("second [scenario] section", s.line);
    head = &s;
  }
  if (!head) throw ParseError("missing [scenario] section", 0);

  Scenario sc;
  Reader r(*head);
  r.allow_only({"name", "modes", "photons", "regime", "intensities", "phases", "coherence"});
  if (r.has("name")) sc.name = r.entry("name").value;
  const long modes = r.integer("modes");
  if (modes < 1) r.fail("modes", "must be at least 1");
  sc.num_modes = static_cast<std::size_t>(modes);
  sc.sources = r.modes("photons", sc.num_modes);
  if (sc.sources.empty()) r.fail("photons", "at least one photon or source is required");
  if (r.has("regime")) sc.regime = parse_regime(r);

  const bool classical = sc.regime != Regime::kQuantum;
  for (const char* key : {"intensities", "phases", "coherence"}) {
    if (!classical && r.has(key)) r.fail(key, "only valid in the classical regimes");
  }
  if (classical) {
    if (std::set<std::size_t>(sc.sources.begin(), sc.sources.end()).size() != sc.sources.size()) {
      r.fail("photons", "classical sources must be on distinct modes");
    }
    sc.intensities = r.has("intensities") ? r.reals("intensities")
                                          : std::vector<double>(sc.sources.size(), 1.0);
    if (sc.intensities.size() != sc.sources.size()) {
      r.fail("intensities", "need one intensity per source");
    }
    for (double v : sc.intensities) {
      if (v < 0.0) r.fail("intensities", "must be non-negative");
    }
    if (r.has("phases")) {
      for (auto part : r.list("phases")) {
        Section tmp{"scenario", head->line, {{"phase", Entry{std::string(part), head->line}}}};
        sc.phases.push_back(Reader(tmp).angle("phase"));
      }
    } else {
      sc.phases.assign(sc.sources.size(), 0.0);
    }
    if (sc.phases.size() != sc.sources.size()) r.fail("phases", "need one phase per source");
    if (r.has("coherence")) {
      const auto& v = r.entry("coherence").value;
      if (v == "incoherent") {
        sc.coherence = Coherence::kIncoherent;
      } else if (v != "coherent") {
        r.fail("coherence", "expected coherent or incoherent, got '" + v + "'");
      }
    }
  }

  bool seen_observe = false;
  for (const auto& s : sections) {
    if (s.name == "element") {
      sc.elements.push_back(parse_element(s, sc.num_modes, sc.elements.size() + 1));
    } else if (s.name == "observe") {
      if (seen_observe) throw ParseError("second [observe] section", s.line);
      seen_observe = true;
      Reader obs(s);
      for (const auto& [key, entry] : s.entries) {
        auto idx = key.size() > 1 && key.front() == 'd' ? to_long(key.substr(1)) : std::nullopt;
        if (!idx) obs.fail(key, "unknown key in [observe]; expected d<i>");
        if (*idx < 1 || static_cast<std::size_t>(*idx) > sc.num_modes) {
          obs.fail(key, "detector " + std::to_string(*idx) + " does not exist in a " +
                            std::to_string(sc.num_modes) + "-mode scenario");
        }
        sc.observations.emplace_back(static_cast<std::size_t>(*idx - 1),
                                     static_cast<int>(obs.integer(key)));
      }
      if (sc.observations.empty()) throw ParseError("empty [observe] section", s.line);
      std::sort(sc.observations.begin(), sc.observations.end());
    } else if (s.name == "sweep") {
      if (sc.sweep) throw ParseError("second [sweep] section", s.line);
      sc.sweep = parse_sweep_section(s);
    }
  }
  check_observations(sc);
  if (sc.sweep) with_parameter(sc, sc.sweep->parameter, sc.sweep->from);
  return sc;
}

std::vector<std::string> builtin_names() {
  return {"single-photon", "penrose-fig3", "penrose-classical"};
}

std::string builtin_scenario_text(std::string_view name) {
  if (name == "single-photon") return std::string(kSinglePhoton);
  if (name == "penrose-fig3") return std::string(kPenroseFig3);
  if (name == "penrose-classical") return std::string(kPenroseClassical);
  throw SemanticError("builtin", "unknown builtin scenario '" + std::string(name) + "'");
}

Scenario builtin_scenario(std::string_view name) {
  return parse_scenario(builtin_scenario_text(name));
}

Scenario with_observations(Scenario scenario, std::string_view spec) {
  scenario.observations.clear();
  for (auto part : split(spec, ',')) {
    const auto eq = part.find('=');
    const std::string key(trim(part.substr(0, eq)));
    if (eq == std::string_view::npos || key.size() < 2 || key.front() != 'd') {
      throw SemanticError("observe", "expected d<i>=<count>, got '" + std::string(part) + "'");
    }
    auto idx = to_long(key.substr(1));
    auto value = to_long(part.substr(eq + 1));
    if (!idx || !value) {
      throw SemanticError("observe", "expected d<i>=<count>, got '" + std::string(part) + "'");
    }
    if (*idx < 1 || static_cast<std::size_t>(*idx) > scenario.num_modes) {
      throw SemanticError(key, "detector " + std::to_string(*idx) + " does not exist in a " +
                                   std::to_string(scenario.num_modes) + "-mode scenario");
    }
    const auto mode = static_cast<std::size_t>(*idx - 1);
    for (const auto& [m, v] : scenario.observations) {
      if (m == mode) throw SemanticError(key, "observed twice");
    }
    scenario.observations.emplace_back(mode, static_cast<int>(*value));
  }
  std::sort(scenario.observations.begin(), scenario.observations.end());
  check_observations(scenario);
  return scenario;
}

Scenario with_parameter(Scenario scenario, std::string_view parameter, double value) {
  const std::string key(parameter);
  if (!std::isfinite(value)) throw SemanticError(key, "value is not finite");
  if (parameter == "epsilon") {
    if (!scenario.is_two_source_apparatus()) {
      throw SemanticError(key, "only defined for the two-source four-detector apparatus");
    }
    if (value <= 0.0) throw SemanticError(key, "must be positive");
    // Symmetric setting |t_A|^2 = |r_B|^2 = T gives epsilon = ((1 - T) / T)^2.
    const double t = 1.0 / (1.0 + std::sqrt(value));
    polar_of(scenario, 1, parameter).transmittance = t;
    polar_of(scenario, 2, parameter).transmittance = 1.0 - t;
    return scenario;
  }
  std::string_view field;
  const std::size_t k = element_index(parameter, field);
  if (k == 0) throw SemanticError(key, "unknown sweep parameter");
  auto& p = polar_of(scenario, k, parameter);
  if (field == "transmittance") {
    if (value < 0.0 || value > 1.0) throw SemanticError(key, "must lie in [0, 1]");
    p.transmittance = value;
  } else if (field == "r_phase") {
    p.r_phase = value;
  } else if (field == "t_phase") {
    p.t_phase = value;
  } else {
    throw SemanticError(key, "unknown sweep parameter");
  }
  scenario.elements[k - 1].build(k);
  return scenario;
}

SweepSpec parse_sweep_spec(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4 && parts.size() != 5) {
    throw SemanticError("sweep", "expected <param>:<lo>:<hi>:<steps>[:log]");
  }
  auto lo = to_double(parts[1]);
  auto hi = to_double(parts[2]);
  auto steps = to_long(parts[3]);
  if (!lo || !hi || !steps || *steps < 1) {
    throw SemanticError("sweep", "bad range in '" + std::string(spec) + "'");
  }
  SweepSpec out{std::string(parts[0]), *lo, *hi, static_cast<int>(*steps), false};
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      out.log_scale = true;
    } else if (parts[4] != "linear") {
      throw SemanticError("sweep", "scale must be linear or log");
    }
  }
  if (out.log_scale && (out.from <= 0.0 || out.to <= 0.0)) {
    throw SemanticError("sweep", "log sweep needs positive endpoints");
  }
  return out;
}

}  // namespace fockretro
