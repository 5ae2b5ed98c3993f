#include "denseflock/config.hpp"

#include "denseflock/errors.hpp"
#include "denseflock/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace denseflock {

namespace {

constexpr std::array kSections{"model", "run", "domain", "scenario", "output", "sweep"};

constexpr std::array kKeys{
    "name", "model", "n", "m", "delta", "q", "kappa", "alpha", "m_policy", "h_steps",
    "dt", "t_end", "sample_every", "domain", "L", "seed", "scenario", "neighbor_search",
    "beta", "gamma", "v_c", "a_spread", "transverse", "shape", "delta_variant", "spacing",
    "spacing_x", "spacing_y", "gap", "margin", "output_dir", "record_trajectory",
    "record_diagnostics", "record_clusters", "record_tables"};

bool known_key(std::string_view key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::size_t line, std::string_view key) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!key.empty()) out += std::string(key) + ": ";
  return out;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& message) {
  throw ConfigError(where(e.line, e.key) + message, e.key, e.line);
}

double to_real(const ConfigEntry& e) {
  double value = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  if (!e.value.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) fail(e, "expected a finite number, got '" + e.value + "'");
  return value;
}

std::uint64_t to_unsigned(const ConfigEntry& e) {
  std::uint64_t value = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail(e, "expected a nonnegative integer, got '" + e.value + "'");
  return value;
}

bool to_bool(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no" || e.value == "off") return false;
  fail(e, "expected true or false, got '" + e.value + "'");
}

std::string_view search_name(NeighborSearch search) {
  switch (search) {
    case NeighborSearch::Pairwise: return "pairwise";
    case NeighborSearch::CellGrid: return "cell_grid";
    case NeighborSearch::Ghost: return "ghost";
  }
  return "pairwise";
}

std::string_view scenario_name(const Generator& g) {
  struct Name {
    std::string_view operator()(const RandomClusters&) const { return "random_clusters"; }
    std::string_view operator()(const ThreeBody&) const { return "three_body"; }
    std::string_view operator()(const GroupVsIndividual&) const { return "group_vs_individual"; }
    std::string_view operator()(const Chain&) const { return "chain"; }
  };
  return std::visit(Name{}, g);
}

class Entries {
 public:
  explicit Entries(const std::vector<ConfigEntry>& entries) {
    for (const ConfigEntry& e : entries) {
      if (!known_key(e.key)) fail(e, "unknown key");
      if (!map_.emplace(e.key, e).second) fail(e, "duplicate key");
    }
  }

  const ConfigEntry* find(const std::string& key) const {
    const auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  template <typename F>
  void with(const std::string& key, F&& apply) const {
    if (const ConfigEntry* e = find(key)) {
      try {
        apply(*e);
      } catch (const std::invalid_argument& ex) {
        fail(*e, ex.what());
      }
    }
  }

  void forbid(const std::string& key, std::string_view scenario) const {
    if (const ConfigEntry* e = find(key)) fail(*e, "does not apply to scenario " + std::string(scenario));
  }

  std::size_t line_of(const std::string& key) const {
    const ConfigEntry* e = find(key);
    return e ? e->line : 0;
  }

 private:
  std::map<std::string, ConfigEntry> map_;
};

std::size_t to_size(const ConfigEntry& e) { return static_cast<std::size_t>(to_unsigned(e)); }

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw InputError("cannot format number");
  return std::string(buffer.data(), ptr);
}

ConfigDocument parse_document(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    const std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where(line_no, {}) + "unterminated section header", {}, line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
        throw ConfigError(where(line_no, {}) + "unknown section [" + section + "]", section, line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where(line_no, {}) + "expected key = value", {}, line_no);
    ConfigEntry entry{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (entry.key.empty()) throw ConfigError(where(line_no, {}) + "missing key before '='", {}, line_no);
    if (!known_key(entry.key)) fail(entry, "unknown key");
    if (entry.value.empty()) fail(entry, "missing value");
    if (section != "sweep") {
      doc.entries.push_back(std::move(entry));
      continue;
    }

    SweepAxis axis{entry.key, {}, line_no};
    for (const SweepAxis& other : doc.axes)
      if (other.key == axis.key) fail(entry, "key swept twice");
    if (entry.value.find(':') != std::string::npos) {
      std::array<ConfigEntry, 3> parts;
      std::string_view rest = entry.value;
      int decimals = 0;
      bool plain = true;
      for (std::size_t k = 0; k < 3; ++k) {
        const auto colon = rest.find(':');
        if ((k < 2) == (colon == std::string_view::npos)) fail(entry, "range must be start:stop:step");
        const std::string_view part = trim(rest.substr(0, colon));
        rest = k < 2 ? rest.substr(colon + 1) : std::string_view{};
        parts[k] = ConfigEntry{entry.key, std::string(part), line_no};
        if (part.find_first_of("eE") != std::string_view::npos) plain = false;
        if (const auto dot = part.find('.'); dot != std::string_view::npos)
          decimals = std::max(decimals, static_cast<int>(part.size() - dot - 1));
      }
      const double start = to_real(parts[0]);
      const double stop = to_real(parts[1]);
      const double step = to_real(parts[2]);
      if (!(step > 0.0) || stop < start) fail(entry, "range needs step > 0 and stop >= start");
      const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
      if (count > 1000000) fail(entry, "range has too many points");
      for (std::size_t k = 0; k < count; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (plain) {
          std::array<char, 64> buffer{};
          std::snprintf(buffer.data(), buffer.size(), "%.*f", decimals, v);
          axis.values.emplace_back(buffer.data());
        } else {
          axis.values.push_back(format_double(v));
        }
      }
    } else {
      std::string_view rest = entry.value;
      while (true) {
        const auto comma = rest.find(',');
        const std::string_view part = trim(rest.substr(0, comma));
        if (part.empty()) fail(entry, "empty value in list");
        axis.values.emplace_back(part);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    }
    doc.axes.push_back(std::move(axis));
  }
  return doc;
}

RunConfig config_from_entries(const std::vector<ConfigEntry>& list) {
  const Entries entries(list);

  std::string scenario = "random_clusters";
  entries.with("scenario", [&](const ConfigEntry& e) { scenario = e.value; });
  ModelKind model = ModelKind::DI;
  entries.with("model", [&](const ConfigEntry& e) { model = model_from_string(e.value); });

  RunConfig config;
  ScenarioSpec& spec = config.spec;
  if (scenario == "random_clusters") {
    spec = box_spec(model);
    spec.params.q = 0;
    spec.name = "run";
  } else if (scenario == "three_body") {
    std::size_t cluster = 30;
    double delta = 2.0;
    entries.with("n", [&](const ConfigEntry& e) { cluster = to_size(e); });
    entries.with("delta", [&](const ConfigEntry& e) { delta = to_real(e); });
    spec = three_body_spec(1.0, 2.0, 1.0, cluster, delta);
    spec.params.model = model;
  } else if (scenario == "group_vs_individual") {
    GroupShape shape = GroupShape::A;
    entries.with("shape", [&](const ConfigEntry& e) {
      if (e.value == "a" || e.value == "A") shape = GroupShape::A;
      else if (e.value == "b" || e.value == "B") shape = GroupShape::B;
      else fail(e, "shape must be a or b");
    });
    spec = group_spec(model, shape);
  } else if (scenario == "chain") {
    spec = chain_spec(2.0);
    spec.params.model = model;
  } else {
    fail(*entries.find("scenario"), "unknown scenario '" + scenario + "'");
  }
  spec.record_clusters = true;

  // keys shared by every scenario
  entries.with("name", [&](const ConfigEntry& e) {
    const bool ok = std::all_of(e.value.begin(), e.value.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    });
    if (!ok) fail(e, "name may only contain letters, digits, '_', '-' and '.'");
    spec.name = e.value;
  });
  entries.with("m", [&](const ConfigEntry& e) { spec.params.m = to_size(e); });
  entries.with("delta", [&](const ConfigEntry& e) { spec.params.delta = to_real(e); });
  entries.with("q", [&](const ConfigEntry& e) { spec.params.q = to_size(e); });
  entries.with("kappa", [&](const ConfigEntry& e) { spec.params.policy.kappa = to_real(e); });
  entries.with("alpha", [&](const ConfigEntry& e) { spec.params.weight.alpha = to_real(e); });
  entries.with("m_policy", [&](const ConfigEntry& e) { spec.params.policy.kind = policy_from_string(e.value); });
  entries.with("h_steps", [&](const ConfigEntry& e) { spec.params.h_steps = to_size(e); });
  entries.with("dt", [&](const ConfigEntry& e) { spec.dt = to_real(e); });
  entries.with("t_end", [&](const ConfigEntry& e) { spec.t_end = to_real(e); });
  entries.with("sample_every", [&](const ConfigEntry& e) { spec.sample_every = to_size(e); });
  entries.with("seed", [&](const ConfigEntry& e) { spec.seed = to_unsigned(e); });
  entries.with("neighbor_search", [&](const ConfigEntry& e) {
    if (e.value == "pairwise") spec.search = NeighborSearch::Pairwise;
    else if (e.value == "cell_grid") spec.search = NeighborSearch::CellGrid;
    else if (e.value == "ghost") spec.search = NeighborSearch::Ghost;
    else fail(e, "neighbor_search must be pairwise, cell_grid or ghost");
  });
  entries.with("record_tables", [&](const ConfigEntry& e) { spec.record_tables = to_bool(e); });
  entries.with("record_trajectory", [&](const ConfigEntry& e) { config.record_trajectory = to_bool(e); });
  entries.with("record_diagnostics", [&](const ConfigEntry& e) { config.record_diagnostics = to_bool(e); });
  entries.with("record_clusters", [&](const ConfigEntry& e) { config.record_clusters = spec.record_clusters = to_bool(e); });
  entries.with("output_dir", [&](const ConfigEntry& e) { config.output_dir = e.value; });

  if (const ConfigEntry* e = entries.find("q"); model == ModelKind::CSQ && e == nullptr)
    throw ConfigError("q: model cs_q needs q", "q");

  std::optional<double> side;
  entries.with("L", [&](const ConfigEntry& e) {
    side = to_real(e);
    if (!(*side > 0.0)) fail(e, "L must be positive");
  });
  entries.with("domain", [&](const ConfigEntry& e) {
    if (e.value == "unbounded") spec.domain = Domain::unbounded();
    else if (e.value == "periodic") spec.domain = Domain::periodic(side.value_or(25.0));
    else fail(e, "domain must be unbounded or periodic");
  });
  if (side && spec.domain.is_periodic()) spec.domain = Domain::periodic(*side);

  const auto forbid_all = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys) entries.forbid(key, scenario);
  };

  if (auto* g = std::get_if<RandomClusters>(&spec.generator)) {
    forbid_all({"beta", "gamma", "v_c", "a_spread", "transverse", "shape", "delta_variant", "spacing", "spacing_x",
                "spacing_y", "gap"});
    entries.with("n", [&](const ConfigEntry& e) { spec.params.n = to_size(e); });
    if (side) g->side = *side;
    else if (spec.domain.is_periodic()) g->side = spec.domain.side();
    entries.with("margin", [&](const ConfigEntry& e) { g->margin = to_real(e); });
  } else if (auto* g = std::get_if<ThreeBody>(&spec.generator)) {
    forbid_all({"shape", "delta_variant", "spacing", "spacing_x", "spacing_y", "gap", "margin"});
    entries.with("beta", [&](const ConfigEntry& e) { g->beta = to_real(e); });
    entries.with("gamma", [&](const ConfigEntry& e) { g->gamma = to_real(e); });
    entries.with("v_c", [&](const ConfigEntry& e) { g->v_c = to_real(e); });
    entries.with("a_spread", [&](const ConfigEntry& e) {
      g->a_spread = to_real(e);
      if (g->a_spread < 0.0) fail(e, "a_spread must be nonnegative");
    });
    entries.with("transverse", [&](const ConfigEntry& e) { g->transverse = to_bool(e); });
  } else if (auto* g = std::get_if<GroupVsIndividual>(&spec.generator)) {
    forbid_all({"beta", "gamma", "v_c", "a_spread", "transverse", "delta_variant", "margin"});
    entries.with("n", [&](const ConfigEntry& e) {
      if (to_size(e) != generated_size(*g)) fail(e, "group_vs_individual always has 29 particles");
    });
    entries.with("spacing", [&](const ConfigEntry& e) { g->spacing_x = g->spacing_y = to_real(e); });
    entries.with("spacing_x", [&](const ConfigEntry& e) { g->spacing_x = to_real(e); });
    entries.with("spacing_y", [&](const ConfigEntry& e) { g->spacing_y = to_real(e); });
    entries.with("gap", [&](const ConfigEntry& e) { g->gap = to_real(e); });
  } else if (auto* g = std::get_if<Chain>(&spec.generator)) {
    forbid_all({"beta", "gamma", "v_c", "a_spread", "transverse", "shape", "spacing_x", "spacing_y", "margin"});
    entries.with("n", [&](const ConfigEntry& e) {
      const std::size_t n = to_size(e);
      if (n < 2) fail(e, "chain needs at least 2 particles");
      g->n_chain = n - 1;
      spec.params.n = n;
    });
    entries.with("delta_variant", [&](const ConfigEntry& e) {
      const double d = to_real(e);
      if (entries.find("delta") != nullptr && d != spec.params.delta) fail(e, "conflicts with delta");
      spec.params.delta = d;
    });
    entries.with("spacing", [&](const ConfigEntry& e) { g->spacing = to_real(e); });
    entries.with("gap", [&](const ConfigEntry& e) { g->gap = to_real(e); });
  }

  try {
    spec.validate();
  } catch (const ConfigError& ex) {
    const std::size_t line = entries.line_of(ex.key());
    if (line == 0) throw;
    throw ConfigError(where(line, {}) + ex.what(), ex.key(), line);
  }
  if (config.output_dir.empty()) throw ConfigError("output_dir: must not be empty", "output_dir");
  return config;
}

RunConfig parse_config(std::string_view text) {
  const ConfigDocument doc = parse_document(text);
  if (!doc.axes.empty())
    throw ConfigError(where(doc.axes.front().line, {}) + "[sweep] section only allowed for sweeps", "sweep",
                      doc.axes.front().line);
  return config_from_entries(doc.entries);
}

std::string serialize_config(const RunConfig& config) {
  const ScenarioSpec& spec = config.spec;
  const ModelParams& p = spec.params;
  std::ostringstream out;
  const auto put = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  const auto real = [&](std::string_view key, double value) { put(key, format_double(value)); };
  const auto flag = [&](std::string_view key, bool value) { put(key, value ? "true" : "false"); };

  out << "[run]\n";
  put("name", spec.name);
  put("scenario", std::string(scenario_name(spec.generator)));
  put("seed", std::to_string(spec.seed));
  real("dt", spec.dt);
  real("t_end", spec.t_end);
  put("sample_every", std::to_string(spec.sample_every));
  put("neighbor_search", std::string(search_name(spec.search)));

  out << "\n[model]\n";
  put("model", std::string(to_string(p.model)));
  if (const auto* g = std::get_if<ThreeBody>(&spec.generator)) put("n", std::to_string(g->cluster_size));
  else put("n", std::to_string(p.n));
  put("m", std::to_string(p.m));
  real("delta", p.delta);
  if (p.model == ModelKind::CSQ) put("q", std::to_string(p.q));
  real("kappa", p.policy.kappa);
  real("alpha", p.weight.alpha);
  put("m_policy", std::string(to_string(p.policy.kind)));
  put("h_steps", std::to_string(p.h_steps));

  out << "\n[domain]\n";
  put("domain", spec.domain.is_periodic() ? "periodic" : "unbounded");
  if (const auto* g = std::get_if<RandomClusters>(&spec.generator)) real("L", g->side);
  else if (spec.domain.is_periodic()) real("L", spec.domain.side());

  out << "\n[scenario]\n";
  if (const auto* g = std::get_if<RandomClusters>(&spec.generator)) {
    real("margin", g->margin);
  } else if (const auto* g = std::get_if<ThreeBody>(&spec.generator)) {
    real("beta", g->beta);
    real("gamma", g->gamma);
    real("v_c", g->v_c);
    if (g->a_spread >= 0.0) real("a_spread", g->a_spread);
    flag("transverse", g->transverse);
  } else if (const auto* g = std::get_if<GroupVsIndividual>(&spec.generator)) {
    put("shape", g->shape == GroupShape::A ? "a" : "b");
    if (g->spacing_x > 0.0) real("spacing_x", g->spacing_x);
    if (g->spacing_y > 0.0) real("spacing_y", g->spacing_y);
    real("gap", g->gap);
  } else if (const auto* g = std::get_if<Chain>(&spec.generator)) {
    if (g->spacing > 0.0) real("spacing", g->spacing);
    real("gap", g->gap);
  }

  out << "\n[output]\n";
  put("output_dir", config.output_dir);
  flag("record_trajectory", config.record_trajectory);
  flag("record_diagnostics", config.record_diagnostics);
  flag("record_clusters", config.record_clusters);
  flag("record_tables", spec.record_tables);
  return out.str();
}

std::vector<std::vector<ConfigEntry>> expand_sweep(const ConfigDocument& document) {
  std::vector<std::vector<ConfigEntry>> points;
  if (document.axes.empty()) return points;
  for (const SweepAxis& axis : document.axes)
    if (axis.values.empty()) return points;

  std::vector<std::size_t> index(document.axes.size(), 0);
  while (true) {
    std::vector<ConfigEntry> point = document.entries;
    for (std::size_t a = 0; a < document.axes.size(); ++a) {
      const SweepAxis& axis = document.axes[a];
      ConfigEntry entry{axis.key, axis.values[index[a]], axis.line};
      const auto it = std::find_if(point.begin(), point.end(), [&](const ConfigEntry& e) { return e.key == axis.key; });
      if (it == point.end()) point.push_back(std::move(entry));
      else *it = std::move(entry);
    }
    points.push_back(std::move(point));

    std::size_t a = document.axes.size();
    while (a > 0) {
      --a;
      if (++index[a] < document.axes[a].values.size()) break;
      index[a] = 0;
      if (a == 0) return points;
    }
  }
}

}  // namespace denseflock
