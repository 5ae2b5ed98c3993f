#include "denseflock/app/commands.hpp"

#include "denseflock/errors.hpp"
#include "denseflock/integrate.hpp"
#include "denseflock/output.hpp"
#include "denseflock/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace denseflock::app {

namespace {

void write_file(const std::filesystem::path& path, void (*writer)(std::ostream&, const TrajectoryRecord&),
                const TrajectoryRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  writer(out, record);
  if (!out) throw InputError("failed writing " + path.string());
}

void write_outputs(const RunConfig& config, const TrajectoryRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (config.record_trajectory) write_file(dir / "trajectory.csv", write_trajectory_csv, record);
  if (config.record_diagnostics) write_file(dir / "diagnostics.csv", write_diagnostics_csv, record);
  if (config.record_clusters) write_file(dir / "clusters.csv", write_clusters_csv, record);
  write_plot_data(dir, record);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

SweepRow sweep_one(const ConfigDocument& document, const std::vector<ConfigEntry>& point, std::size_t index,
                   bool seed_swept, bool write_runs) {
  SweepRow row;
  row.index = index;
  for (const SweepAxis& axis : document.axes) {
    const auto it = std::find_if(point.begin(), point.end(), [&](const ConfigEntry& e) { return e.key == axis.key; });
    row.values.push_back(it->value);
  }
  try {
    RunConfig config = config_from_entries(point);
    if (!seed_swept) config.spec.seed = derive_seed(config.spec.seed, index);
    row.seed = config.spec.seed;
    const auto* three_body = std::get_if<ThreeBody>(&config.spec.generator);
    if (three_body != nullptr) config.spec.record_tables = true;
    config.spec.record_clusters = config.spec.record_clusters && write_runs;

    const TrajectoryRecord record = run_simulation(config.spec);
    const Sample& last = record.samples.back();
    row.mom0 = last.diagnostics.momentum[0];
    row.mom1 = last.diagnostics.momentum.size() > 1 ? last.diagnostics.momentum[1] : 0.0;
    row.n_clusters = last.diagnostics.n_clusters;
    if (three_body != nullptr) {
      row.regime = std::string(to_string(classify_three_body(record).regime));
      row.predicted = std::string(to_string(predict_three_body(three_body->beta, three_body->gamma,
                                                               config.spec.params.delta, three_body->cluster_size,
                                                               three_body->v_c).regime));
    }
    if (write_runs) write_outputs(config, record, std::filesystem::path(config.output_dir) / ("run_" + std::to_string(index)));
    row.status = "ok";
  } catch (const ConfigError& e) {
    row.status = "config_error";
    row.message = e.what();
  } catch (const IntegrationFault& e) {
    row.status = "integration_fault";
    row.message = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

int cmd_run(const RunConfig& config, std::ostream& log) {
  TrajectoryRecord record;
  try {
    record = run_simulation(config.spec);
  } catch (const IntegrationFault& e) {
    log << "integration fault: " << e.what() << '\n';
    return IntegrationFailure;
  }
  write_outputs(config, record, config.output_dir);
  const Sample& last = record.samples.back();
  log << config.spec.name << ": " << record.samples.size() << " samples to t=" << format_double(last.state.t)
      << ", V=" << format_double(last.diagnostics.vmax) << ", clusters=" << last.diagnostics.n_clusters << " -> "
      << config.output_dir << '\n';
  return Ok;
}

std::vector<SweepRow> run_sweep(const ConfigDocument& document, unsigned jobs, bool write_runs) {
  const auto points = expand_sweep(document);
  std::vector<SweepRow> rows(points.size());
  const bool seed_swept =
      std::any_of(document.axes.begin(), document.axes.end(), [](const SweepAxis& a) { return a.key == "seed"; });
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(points.size(), 1)));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++)
      rows[k] = sweep_one(document, points[k], k, seed_swept, write_runs);
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  return rows;
}

void write_sweep_csv(std::ostream& out, const ConfigDocument& document, const std::vector<SweepRow>& rows) {
  out << "run";
  for (const SweepAxis& axis : document.axes) out << ',' << axis.key;
  out << ",seed,status,regime,predicted,mom0,mom1,n_clusters,message\n";
  for (const SweepRow& row : rows) {
    out << row.index;
    for (const std::string& v : row.values) out << ',' << csv_field(v);
    out << ',' << row.seed << ',' << row.status << ',' << row.regime << ',' << row.predicted << ',';
    if (row.status == "ok") out << format_double(row.mom0) << ',' << format_double(row.mom1) << ',' << row.n_clusters;
    else out << ",,";
    out << ',' << csv_field(row.message) << '\n';
  }
}

int cmd_sweep(const ConfigDocument& document, const SweepOptions& options, std::ostream& log) {
  const auto rows = run_sweep(document, options.jobs, options.write_runs);
  if (options.summary.has_parent_path()) std::filesystem::create_directories(options.summary.parent_path());
  std::ofstream out(options.summary, std::ios::binary);
  if (!out) throw InputError("cannot open " + options.summary.string() + " for writing");
  write_sweep_csv(out, document, rows);
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status != "ok"; });
  log << rows.size() << " runs, " << failed << " failed -> " << options.summary.string() << '\n';
  return Ok;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  const auto* g = std::get_if<ThreeBody>(&config.spec.generator);
  if (g == nullptr) throw ConfigError("classify needs scenario = three_body", "scenario");
  ScenarioSpec spec = config.spec;
  spec.record_tables = true;
  spec.record_clusters = false;
  TrajectoryRecord record;
  try {
    record = run_simulation(spec);
  } catch (const IntegrationFault& e) {
    out << "integration fault: " << e.what() << '\n';
    return IntegrationFailure;
  }
  const RegimeResult sim = classify_three_body(record);
  const RegimeResult pred = predict_three_body(g->beta, g->gamma, spec.params.delta, g->cluster_size, g->v_c);
  const auto time = [](const std::optional<double>& t) { return t ? format_double(*t) : std::string("none"); };
  const double gain = sim.final_momentum[g->transverse ? 1 : 0] - g->v_c;
  out << "simulated: " << to_string(sim.regime) << " (c leaves b at " << time(sim.t_c_detach) << ", b leaves a at "
      << time(sim.t_b_detach) << ")\n"
      << "predicted: " << to_string(pred.regime) << " (T_c " << time(pred.t_c_detach) << ", T_b "
      << time(pred.t_b_detach) << ")\n"
      << "final momentum: (" << format_double(sim.final_momentum[0]) << ", " << format_double(sim.final_momentum[1])
      << "), cluster gain " << format_double(gain) << ", asymptotic estimate "
      << format_double(momentum_estimate(sim.regime, spec.params.delta, g->cluster_size, g->v_c)) << '\n';
  return Ok;
}

}  // namespace denseflock::app
