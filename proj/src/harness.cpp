#include "driftbench/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "driftbench/baselines.hpp"
#include "driftbench/padd.hpp"

namespace driftbench {

const std::vector<std::string>& known_detectors() {
  static const std::vector<std::string> roster = {"padd", "cddd", "ddm",
                                                  "eddm", "adwin"};
  return roster;
}

void ExperimentConfig::validate() const {
  if (detectors.empty())
    throw std::invalid_argument("config: detector roster is empty");
  const auto& roster = known_detectors();
  for (const auto& name : detectors)
    if (std::find(roster.begin(), roster.end(), name) == roster.end())
      throw std::invalid_argument("config: unknown detector '" + name + "'");
  if (dynamics.empty() || drift_counts.empty() || feature_counts.empty())
    throw std::invalid_argument("config: empty stream grid axis");
  if (n_chunks < 1 || chunk_size < 1)
    throw std::invalid_argument("config: n_chunks and chunk_size must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

namespace {

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad value at /") + key +
                                ": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: not valid json: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: root must be an object");

  static const std::vector<std::string> allowed = {
      "base_seed", "detectors", "dynamics",  "drift_counts", "feature_counts",
      "replications", "n_chunks", "chunk_size", "out_dir", "jobs"};
  for (const auto& [key, value] : doc.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("config: unknown key /" + key);
  if (!doc.contains("base_seed"))
    throw std::invalid_argument("config: missing required key /base_seed");

  ExperimentConfig config;
  config.base_seed = doc.at("base_seed").get<std::uint64_t>();
  config.detectors = get_or(doc, "detectors", known_detectors());
  if (doc.contains("dynamics")) {
    config.dynamics.clear();
    for (const auto& d : doc.at("dynamics"))
      config.dynamics.push_back(dynamics_from_string(d.get<std::string>()));
  }
  config.drift_counts = get_or(doc, "drift_counts", config.drift_counts);
  config.feature_counts = get_or(doc, "feature_counts", config.feature_counts);
  config.replications = get_or(doc, "replications", config.replications);
  config.n_chunks = get_or(doc, "n_chunks", config.n_chunks);
  config.chunk_size = get_or(doc, "chunk_size", config.chunk_size);
  config.out_dir = get_or(doc, "out_dir", config.out_dir);
  config.jobs = get_or(doc, "jobs", config.jobs);
  config.validate();
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["base_seed"] = config.base_seed;
  doc["detectors"] = config.detectors;
  std::vector<std::string> dyn;
  for (auto d : config.dynamics) dyn.push_back(to_string(d));
  doc["dynamics"] = dyn;
  doc["drift_counts"] = config.drift_counts;
  doc["feature_counts"] = config.feature_counts;
  doc["replications"] = config.replications;
  doc["n_chunks"] = config.n_chunks;
  doc["chunk_size"] = config.chunk_size;
  doc["out_dir"] = config.out_dir;
  doc["jobs"] = config.jobs;
  return doc.dump(2);
}

SweepSpec SweepSpec::defaults() { return grid(15, 10); }

SweepSpec SweepSpec::grid(std::size_t n_alphas, std::size_t n_thetas) {
  if (n_alphas < 2 || n_thetas < 2)
    throw std::invalid_argument("sweep: grid needs at least 2 values per axis");
  SweepSpec spec;
  for (std::size_t i = 0; i < n_alphas; ++i)
    spec.alphas.push_back(0.03 + (0.2 - 0.03) * static_cast<double>(i) /
                                     static_cast<double>(n_alphas - 1));
  for (std::size_t i = 0; i < n_thetas; ++i)
    spec.thetas.push_back(0.1 + (0.3 - 0.1) * static_cast<double>(i) /
                                    static_cast<double>(n_thetas - 1));
  return spec;
}

void SweepSpec::validate() const {
  if (alphas.empty() || thetas.empty())
    throw std::invalid_argument("sweep: empty grid");
  if (!std::is_sorted(alphas.begin(), alphas.end(), std::less_equal<>()) ||
      !std::is_sorted(thetas.begin(), thetas.end(), std::less_equal<>()))
    throw std::invalid_argument("sweep: grids must be strictly increasing");
}

std::string StreamConfigId::name() const {
  return to_string(dynamics) + "_d" + std::to_string(n_drifts) + "_f" +
         std::to_string(n_features);
}

std::uint64_t stream_seed(std::uint64_t base_seed, const StreamConfigId& id,
                          std::size_t replication) {
  return Rng::derive(base_seed, "stream/" + id.name(), replication).next_u64();
}

std::uint64_t detector_seed(std::uint64_t base_seed, const std::string& detector,
                            const StreamConfigId& id, std::size_t replication) {
  return Rng::derive(base_seed, "detector/" + detector + "/" + id.name(),
                     replication)
      .next_u64();
}

std::vector<std::size_t> run_detector(const std::string& name,
                                      const Stream& stream,
                                      const StreamConfigId& id,
                                      std::uint64_t seed) {
  if (name == "padd") {
    PaddParams params = id.dynamics == DriftDynamics::sudden
                            ? PaddParams::sudden_preset()
                            : PaddParams::gradual_preset();
    return padd_run(params, stream.chunks, seed);
  }
  if (name == "cddd") {
    // Sensitivity by drift density: 0.2 for sparse (3, 5), 0.9 for dense.
    Cddd detector(id.n_drifts <= 5 ? 0.2 : 0.9);
    for (const auto& chunk : stream.chunks) detector.process_chunk(chunk);
    return detector.detections();
  }
  if (name == "ddm")
    return supervised_protocol(stream.chunks, SupervisedDetector::ddm);
  if (name == "eddm")
    return supervised_protocol(stream.chunks, SupervisedDetector::eddm);
  if (name == "adwin")
    return supervised_protocol(stream.chunks, SupervisedDetector::adwin);
  throw std::invalid_argument("unknown detector '" + name + "'");
}

namespace {

std::vector<StreamConfigId> grid_configs(const ExperimentConfig& config) {
  std::vector<StreamConfigId> out;
  for (auto dyn : config.dynamics)
    for (auto drifts : config.drift_counts)
      for (auto features : config.feature_counts)
        out.push_back({dyn, drifts, features});
  return out;
}

StreamSpec spec_for(const ExperimentConfig& config, const StreamConfigId& id,
                    std::size_t replication) {
  StreamSpec spec = StreamSpec::make(id.dynamics, id.n_drifts, id.n_features,
                                     stream_seed(config.base_seed, id, replication));
  spec.n_chunks = config.n_chunks;
  spec.chunk_size = config.chunk_size;
  return spec;
}

// Per-config mean over replications of one measure; absent if no replication
// produced a defined value.
std::optional<double> config_cell(
    const std::vector<const MetricsRow*>& rows,
    std::optional<double> EvaluationResult::* measure) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto* row : rows) {
    if ((row->result.*measure).has_value()) {
      sum += *(row->result.*measure);
      count += 1;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace

void compute_ranks(BenchmarkResult& result) {
  std::vector<std::string> methods;
  std::vector<StreamConfigId> configs;
  for (const auto& row : result.metrics) {
    if (std::find(methods.begin(), methods.end(), row.detector) == methods.end())
      methods.push_back(row.detector);
    if (std::find(configs.begin(), configs.end(), row.stream) == configs.end())
      configs.push_back(row.stream);
  }
  if (methods.empty() || configs.empty()) return;

  std::optional<double> EvaluationResult::* measures[3] = {
      &EvaluationResult::d1, &EvaluationResult::d2, &EvaluationResult::r_err};

  // method x config cell table, averaged over replications.
  std::vector<std::vector<std::vector<std::optional<double>>>> tables(
      3, std::vector<std::vector<std::optional<double>>>(
             methods.size(),
             std::vector<std::optional<double>>(configs.size())));
  for (std::size_t m = 0; m < methods.size(); ++m) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      std::vector<const MetricsRow*> rows;
      for (const auto& row : result.metrics)
        if (row.detector == methods[m] && row.stream == configs[c])
          rows.push_back(&row);
      for (std::size_t meas = 0; meas < 3; ++meas)
        tables[meas][m][c] = config_cell(rows, measures[meas]);
    }
  }

  // A method with any undefined cell cannot be ranked (undefined-ness is
  // shared by all three measures, so the exclusion set is too).
  std::vector<std::size_t> included;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    bool ok = true;
    for (const auto& cell : tables[0][m])
      if (!cell.has_value()) ok = false;
    if (ok)
      included.push_back(m);
    else
      result.excluded_methods.push_back(methods[m]);
  }

  if (included.size() >= 2) {
    for (std::size_t meas = 0; meas < 3; ++meas) {
      std::vector<std::vector<std::optional<double>>> table;
      std::vector<std::string> names;
      for (auto m : included) {
        table.push_back(tables[meas][m]);
        names.push_back(methods[m]);
      }
      auto ranks = mean_ranks(table, names);
      static const char* measure_names[3] = {"d1", "d2", "r"};
      for (std::size_t i = 0; i < names.size(); ++i)
        result.ranks.push_back({measure_names[meas], names[i], ranks[i]});
    }
    result.critical_difference = nemenyi_cd(included.size(), configs.size());
  }
}

BenchmarkResult run_benchmark(const ExperimentConfig& config) {
  config.validate();
  auto configs = grid_configs(config);

  struct Task {
    std::size_t config_index;
    std::size_t replication;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < configs.size(); ++c)
    for (std::size_t rep = 0; rep < config.replications; ++rep)
      tasks.push_back({c, rep});

  struct TaskResult {
    std::vector<std::vector<std::size_t>> detections;  // per detector
  };
  std::vector<TaskResult> results(tasks.size());

  const auto n_tasks = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(config.jobs)
  for (std::ptrdiff_t t = 0; t < n_tasks; ++t) {
    const Task& task = tasks[static_cast<std::size_t>(t)];
    const StreamConfigId& id = configs[task.config_index];
    Stream stream = generate_stream(spec_for(config, id, task.replication));
    auto& result = results[static_cast<std::size_t>(t)];
    result.detections.reserve(config.detectors.size());
    for (const auto& name : config.detectors)
      result.detections.push_back(run_detector(
          name, stream, id,
          detector_seed(config.base_seed, name, id, task.replication)));
  }

  BenchmarkResult out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Task& task = tasks[t];
    const StreamConfigId& id = configs[task.config_index];
    StreamSpec spec = spec_for(config, id, task.replication);
    auto drifts = build_schedule(spec).centers;
    for (std::size_t d = 0; d < config.detectors.size(); ++d) {
      const auto& detections = results[t].detections[d];
      for (auto chunk : detections)
        out.detections.push_back(
            {config.detectors[d], id.name(), task.replication, chunk});
      if (!drifts.empty())
        out.metrics.push_back({id, config.detectors[d], task.replication,
                               evaluate(detections, drifts)});
    }
  }
  compute_ranks(out);
  return out;
}

SweepResult run_sweep(const SweepSpec& sweep, const ExperimentConfig& config) {
  sweep.validate();
  config.validate();

  SweepResult out;
  out.alphas = sweep.alphas;
  out.thetas = sweep.thetas;
  std::size_t n_cells = sweep.alphas.size() * sweep.thetas.size();
  std::vector<std::array<double, 3>> sums(n_cells, {0.0, 0.0, 0.0});
  std::vector<std::array<std::size_t, 3>> counts(n_cells, {0, 0, 0});

  std::vector<StreamConfigId> family;
  for (auto dyn : config.dynamics)
    for (auto features : config.feature_counts)
      family.push_back({dyn, sweep.n_drifts, features});

  for (const auto& id : family) {
    for (std::size_t rep = 0; rep < config.replications; ++rep) {
      Stream stream = generate_stream(spec_for(config, id, rep));
      std::uint64_t seed = detector_seed(config.base_seed, "padd", id, rep);
      const auto cells = static_cast<std::ptrdiff_t>(n_cells);
#pragma omp parallel for schedule(dynamic) num_threads(config.jobs)
      for (std::ptrdiff_t cell = 0; cell < cells; ++cell) {
        auto c = static_cast<std::size_t>(cell);
        PaddParams params;
        params.alpha = sweep.alphas[c / sweep.thetas.size()];
        params.theta = sweep.thetas[c % sweep.thetas.size()];
        auto detections = padd_run(params, stream.chunks, seed);
        auto eval = evaluate(detections, stream.schedule.centers);
        const std::optional<double> values[3] = {eval.d1, eval.d2, eval.r_err};
        for (std::size_t meas = 0; meas < 3; ++meas) {
          if (values[meas]) {
            sums[c][meas] += *values[meas];
            counts[c][meas] += 1;
          }
        }
      }
    }
  }

  out.matrices.assign(3, std::vector<std::vector<std::optional<double>>>(
                             sweep.alphas.size(),
                             std::vector<std::optional<double>>(
                                 sweep.thetas.size())));
  out.normalized = out.matrices;
  for (std::size_t meas = 0; meas < 3; ++meas) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t a = 0; a < sweep.alphas.size(); ++a) {
      for (std::size_t th = 0; th < sweep.thetas.size(); ++th) {
        std::size_t c = a * sweep.thetas.size() + th;
        if (counts[c][meas] > 0) {
          double v = sums[c][meas] / static_cast<double>(counts[c][meas]);
          out.matrices[meas][a][th] = v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    double span = hi - lo;
    for (std::size_t a = 0; a < sweep.alphas.size(); ++a)
      for (std::size_t th = 0; th < sweep.thetas.size(); ++th)
        if (out.matrices[meas][a][th])
          out.normalized[meas][a][th] =
              span > 0.0 ? (*out.matrices[meas][a][th] - lo) / span : 0.0;
  }
  return out;
}

// --------------------------------------------------------------- CSV / JSON

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text,
                                               const std::string& expected_header,
                                               const char* what) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != expected_header)
    throw std::invalid_argument(std::string(what) + ": unexpected header");
  std::vector<std::vector<std::string>> rows;
  std::size_t n_fields = split_line(expected_header).size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != n_fields)
      throw std::invalid_argument(std::string(what) + ": malformed row: " + line);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

std::vector<MetricsRow> parse_metrics_csv(const std::string& text) {
  auto raw = read_csv(text, "dynamics,n_drifts,n_features,detector,replication,d1,d2,r",
                      "metrics csv");
  std::vector<MetricsRow> rows;
  for (const auto& fields : raw) {
    MetricsRow row;
    row.stream.dynamics = dynamics_from_string(fields[0]);
    row.stream.n_drifts = std::stoull(fields[1]);
    row.stream.n_features = std::stoull(fields[2]);
    row.detector = fields[3];
    row.replication = std::stoull(fields[4]);
    auto cell = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return std::stod(s);
    };
    row.result.d1 = cell(fields[5]);
    row.result.d2 = cell(fields[6]);
    row.result.r_err = cell(fields[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DetectionRecord> parse_detections_csv(const std::string& text) {
  auto raw = read_csv(text, "detector,stream_id,replication,chunk", "detections csv");
  std::vector<DetectionRecord> rows;
  for (const auto& fields : raw)
    rows.push_back({fields[0], fields[1], std::stoull(fields[2]),
                    std::stoull(fields[3])});
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string detections_csv(const std::vector<DetectionRecord>& rows) {
  std::ostringstream out;
  out << "detector,stream_id,replication,chunk\n";
  for (const auto& row : rows)
    out << row.detector << ',' << row.stream_id << ',' << row.replication
        << ',' << row.chunk << '\n';
  return out.str();
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "dynamics,n_drifts,n_features,detector,replication,d1,d2,r\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const auto& row : rows)
    out << to_string(row.stream.dynamics) << ',' << row.stream.n_drifts << ','
        << row.stream.n_features << ',' << row.detector << ','
        << row.replication << ',' << cell(row.result.d1) << ','
        << cell(row.result.d2) << ',' << cell(row.result.r_err) << '\n';
  return out.str();
}

std::string ranks_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "measure,method,mean_rank\n";
  for (const auto& row : result.ranks)
    out << row.measure << ',' << row.method << ','
        << format_double(row.mean_rank) << '\n';
  if (result.critical_difference)
    out << "cd,," << format_double(*result.critical_difference) << '\n';
  return out.str();
}

std::string sweep_matrix_csv(const SweepResult& sweep, std::size_t measure,
                             bool normalized) {
  const auto& matrix = normalized ? sweep.normalized.at(measure)
                                  : sweep.matrices.at(measure);
  std::ostringstream out;
  out << "alpha\\theta";
  for (double t : sweep.thetas) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t a = 0; a < sweep.alphas.size(); ++a) {
    out << format_double(sweep.alphas[a]);
    for (std::size_t th = 0; th < sweep.thetas.size(); ++th) {
      out << ',';
      if (matrix[a][th]) out << format_double(*matrix[a][th]);
    }
    out << '\n';
  }
  return out.str();
}

std::string schedule_json(const DriftSchedule& schedule) {
  nlohmann::json doc;
  doc["centers"] = schedule.centers;
  doc["dynamics"] = to_string(schedule.dynamics);
  return doc.dump();
}

DriftSchedule schedule_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  DriftSchedule schedule;
  schedule.centers = doc.at("centers").get<std::vector<std::size_t>>();
  schedule.dynamics = dynamics_from_string(doc.at("dynamics").get<std::string>());
  schedule.slope =
      schedule.dynamics == DriftDynamics::sudden ? kSuddenSlope : kGradualSlope;
  return schedule;
}

std::string stream_csv(const Stream& stream) {
  std::ostringstream out;
  if (stream.chunks.empty()) return "";
  std::size_t n_features = stream.chunks.front().n_features();
  for (std::size_t f = 0; f < n_features; ++f) out << 'f' << f << ',';
  out << "label,chunk\n";
  for (const auto& chunk : stream.chunks) {
    for (std::size_t row = 0; row < chunk.n_samples(); ++row) {
      for (std::size_t f = 0; f < n_features; ++f)
        out << format_double(chunk.features(static_cast<Eigen::Index>(row),
                                            static_cast<Eigen::Index>(f)))
            << ',';
      out << static_cast<int>(chunk.labels[row]) << ',' << chunk.index << '\n';
    }
  }
  return out.str();
}

}  // namespace driftbench
