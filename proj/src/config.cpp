#include "algebromech/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace algebromech::cli {

ConfigError::ConfigError(int line, const std::string& key, const std::string& message)
    : InputError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                 (key.empty() ? std::string() : "key '" + key + "': ") + message),
      line_(line),
      key_(key) {}

std::string_view to_string(Formulation f) { return f == Formulation::elp ? "elp" : "hp"; }

std::string_view to_string(CompareKind k) {
  switch (k) {
    case CompareKind::reduce: return "reduce";
    case CompareKind::hp_reduce: return "hp_reduce";
    case CompareKind::routh: return "routh";
  }
  return "reduce";
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, int line, const std::string& key) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(line, key, "expected a number, got '" + std::string(text) + "'");
  return value;
}

template <class Int>
Int parse_integer(std::string_view text, int line, const std::string& key) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(line, key, "expected an integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<double> parse_list(std::string_view text, int line, const std::string& key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto start = text.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = text.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_double(text.substr(start, end - start), line, key));
    pos = end;
  }
  return out;
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"initial", {"q", "xi", "v", "p"}},
      {"integrate", {"t_final", "dt", "method", "formulation", "seed"}},
      {"output", {"trajectory", "report"}},
      {"compare", {"kind", "morphism", "tolerance", "momentum", "n_cyclic"}},
  };
  return keys;
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "malformed section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "system" && !known_keys().contains(current))
        throw ConfigError(line_no, "", "unknown section [" + current + "]");
      if (sections.contains(current)) throw ConfigError(line_no, "", "duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    if (current.empty()) throw ConfigError(line_no, "", "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (current != "system") {
      const auto& allowed = known_keys().at(current);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError(line_no, key, "unknown key in [" + current + "]");
    }
    Section& section = sections[current];
    if (section.contains(key)) throw ConfigError(line_no, key, "duplicate key");
    section[key] = {std::string(trim(line.substr(eq + 1))), line_no};
    if (end == text.size()) break;
  }
  return sections;
}

const Entry* find(const std::map<std::string, Section>& sections, const std::string& section, const std::string& key) {
  const auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  const auto e = s->second.find(key);
  return e == s->second.end() ? nullptr : &e->second;
}

const Entry& require(const std::map<std::string, Section>& sections, const std::string& section, const std::string& key) {
  if (const Entry* e = find(sections, section, key)) return *e;
  throw ConfigError(0, key, "missing required key in [" + section + "]");
}

void check_length(const std::optional<std::vector<double>>& values, const Entry* entry, const std::string& key,
                  Eigen::Index expected, const char* symbol) {
  if (!values || static_cast<Eigen::Index>(values->size()) == expected) return;
  std::ostringstream msg;
  msg << "has length " << values->size() << ", expected " << symbol << "=" << expected;
  throw ConfigError(entry ? entry->line : 0, key, msg.str());
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const auto sections = tokenize(text);
  RunConfig config;

  const Entry& name = require(sections, "system", "name");
  config.system = name.value;
  if (const auto s = sections.find("system"); s != sections.end())
    for (const auto& [key, entry] : s->second) {
      if (key == "name") continue;
      config.params[key] = parse_double(entry.value, entry.line, key);
    }

  const Entry& t_final = require(sections, "integrate", "t_final");
  config.t_final = parse_double(t_final.value, t_final.line, "t_final");
  if (!(config.t_final > 0.0) || !std::isfinite(config.t_final))
    throw ConfigError(t_final.line, "t_final", "must be positive and finite");
  const Entry& dt = require(sections, "integrate", "dt");
  config.dt = parse_double(dt.value, dt.line, "dt");
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ConfigError(dt.line, "dt", "must be positive and finite");
  if (const Entry* e = find(sections, "integrate", "method")) {
    try {
      config.method = parse_method(e->value);
    } catch (const InputError& err) {
      throw ConfigError(e->line, "method", err.what());
    }
  }
  if (const Entry* e = find(sections, "integrate", "formulation")) {
    if (e->value == "elp") config.formulation = Formulation::elp;
    else if (e->value == "hp") config.formulation = Formulation::hp;
    else throw ConfigError(e->line, "formulation", "expected elp or hp, got '" + e->value + "'");
  }
  if (const Entry* e = find(sections, "integrate", "seed")) config.seed = parse_integer<std::uint64_t>(e->value, e->line, "seed");

  for (const char* key : {"q", "xi", "v", "p"}) {
    if (const Entry* e = find(sections, "initial", key)) {
      auto values = parse_list(e->value, e->line, key);
      for (double v : values)
        if (!std::isfinite(v)) throw ConfigError(e->line, key, "entries must be finite");
      std::optional<std::vector<double>>& slot =
          key == std::string("q") ? config.q : key == std::string("xi") ? config.xi : key == std::string("v") ? config.v : config.p;
      slot = std::move(values);
    }
  }
  if (config.formulation == Formulation::elp)
    for (const char* key : {"v", "p"})
      if (const Entry* e = find(sections, "initial", key))
        throw ConfigError(e->line, key, "only valid with formulation = hp");

  config.trajectory_path = config.system + ".csv";
  config.report_path = config.system + ".report";
  if (const Entry* e = find(sections, "output", "trajectory")) config.trajectory_path = e->value;
  if (const Entry* e = find(sections, "output", "report")) config.report_path = e->value;
  if (config.trajectory_path.empty()) throw ConfigError(find(sections, "output", "trajectory")->line, "trajectory", "empty path");
  if (config.report_path.empty()) throw ConfigError(find(sections, "output", "report")->line, "report", "empty path");

  catalog::SystemBundle system;
  try {
    system = catalog::build(config.system, config.params);
  } catch (const InputError& err) {
    throw ConfigError(name.line, "name", err.what());
  }
  const Eigen::Index n = system.algebroid->base_dim();
  const Eigen::Index m = system.algebroid->fiber_dim();
  check_length(config.q, find(sections, "initial", "q"), "q", n, "n");
  check_length(config.xi, find(sections, "initial", "xi"), "xi", m, "m");
  check_length(config.v, find(sections, "initial", "v"), "v", m, "m");
  check_length(config.p, find(sections, "initial", "p"), "p", m, "m");

  if (sections.contains("compare")) {
    CompareSection cmp;
    const Entry& kind = require(sections, "compare", "kind");
    if (kind.value == "reduce") cmp.kind = CompareKind::reduce;
    else if (kind.value == "hp_reduce") cmp.kind = CompareKind::hp_reduce;
    else if (kind.value == "routh") cmp.kind = CompareKind::routh;
    else throw ConfigError(kind.line, "kind", "expected reduce, hp_reduce or routh, got '" + kind.value + "'");
    if (const Entry* e = find(sections, "compare", "tolerance")) {
      cmp.tolerance = parse_double(e->value, e->line, "tolerance");
      if (!(cmp.tolerance >= 0.0)) throw ConfigError(e->line, "tolerance", "must be non-negative");
    }
    if (cmp.kind == CompareKind::routh) {
      if (const Entry* e = find(sections, "compare", "n_cyclic")) {
        cmp.n_cyclic = parse_integer<int>(e->value, e->line, "n_cyclic");
        if (cmp.n_cyclic < 1 || cmp.n_cyclic >= n) throw ConfigError(e->line, "n_cyclic", "must lie in [1, n-1]");
      }
      if (const Entry* e = find(sections, "compare", "momentum")) {
        cmp.momentum = parse_list(e->value, e->line, "momentum");
        check_length(cmp.momentum, e, "momentum", cmp.n_cyclic, "n_cyclic");
      }
      if (const Entry* e = find(sections, "compare", "morphism")) throw ConfigError(e->line, "morphism", "not used by routh");
    } else {
      const Entry& morphism = require(sections, "compare", "morphism");
      cmp.morphism = morphism.value;
      try {
        const catalog::MorphismBundle mb = catalog::build_morphism(cmp.morphism, config.params, config.system);
        if (mb.source.name != config.system)
          throw ConfigError(morphism.line, "morphism", "has source system '" + mb.source.name + "', not '" + config.system + "'");
      } catch (const ConfigError&) {
        throw;
      } catch (const InputError& err) {
        throw ConfigError(morphism.line, "morphism", err.what());
      }
      for (const char* key : {"momentum", "n_cyclic"})
        if (const Entry* e = find(sections, "compare", key)) throw ConfigError(e->line, key, "only used by routh");
    }
    config.compare = std::move(cmp);
  }
  return config;
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  auto list = [](const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + format_double(values[i]);
    return s;
  };
  auto line = [&out](const std::string& key, const std::string& value) {
    out << key << " =" << (value.empty() ? "" : " ") << value << "\n";
  };
  out << "[system]\n";
  line("name", config.system);
  for (const auto& [key, value] : config.params) line(key, format_double(value));
  out << "\n[initial]\n";
  if (config.q) line("q", list(*config.q));
  if (config.xi) line("xi", list(*config.xi));
  if (config.v) line("v", list(*config.v));
  if (config.p) line("p", list(*config.p));
  out << "\n[integrate]\n";
  line("t_final", format_double(config.t_final));
  line("dt", format_double(config.dt));
  line("method", std::string(to_string(config.method)));
  line("formulation", std::string(to_string(config.formulation)));
  line("seed", std::to_string(config.seed));
  out << "\n[output]\n";
  line("trajectory", config.trajectory_path);
  line("report", config.report_path);
  if (config.compare) {
    const CompareSection& cmp = *config.compare;
    out << "\n[compare]\n";
    line("kind", std::string(to_string(cmp.kind)));
    if (cmp.kind != CompareKind::routh) line("morphism", cmp.morphism);
    line("tolerance", format_double(cmp.tolerance));
    if (cmp.kind == CompareKind::routh) {
      line("n_cyclic", std::to_string(cmp.n_cyclic));
      if (cmp.momentum) line("momentum", list(*cmp.momentum));
    }
  }
  return out.str();
}

}  // namespace algebromech::cli
