#pragma once

#include "denseflock/scenario_spec.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace denseflock {

/// A scenario plus where and what to write.
struct RunConfig {
  ScenarioSpec spec;
  std::string output_dir = "out";
  bool record_trajectory = true;
  bool record_diagnostics = true;
  bool record_clusters = true;

  bool operator==(const RunConfig&) const = default;
};

/// One `key = value` line of a config file.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// One swept key and the literal values it takes.
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
  std::size_t line = 0;
};

/// A parsed file: the base entries and the axes of the optional [sweep] section.
struct ConfigDocument {
  std::vector<ConfigEntry> entries;
  std::vector<SweepAxis> axes;
};

/// Splits config text into entries. Accepts `#`/`;` comments, blank lines and the sections
/// [model] [run] [domain] [scenario] [output] [sweep]; keys are unique across sections.
/// Sweep values are `start:stop:step` (inclusive) or comma lists.
ConfigDocument parse_document(std::string_view text);

/// Builds and validates a RunConfig from entries; unknown or inapplicable keys are rejected.
RunConfig config_from_entries(const std::vector<ConfigEntry>& entries);

/// parse_document + config_from_entries; a [sweep] section is rejected here.
RunConfig parse_config(std::string_view text);

/// Text that parses back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Every grid point of a document: the base entries with one value per axis substituted.
/// Axes vary last-fastest. No axes means no points.
std::vector<std::vector<ConfigEntry>> expand_sweep(const ConfigDocument& document);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

}  // namespace denseflock
