#include "mvbbo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mvbbo/benchmarks.hpp"
#include "mvbbo/optimizer.hpp"
#include "mvbbo/sofomore.hpp"

namespace mvbbo {

namespace {

using nlohmann::json;

template <typename T, std::size_t N>
std::array<T, N> to_array(const json& value, const char* field) {
  if (!value.is_array() || value.size() != N) {
    throw ConfigError(std::string("field '") + field + "' must be an array of " +
                      std::to_string(N) + " values");
  }
  std::array<T, N> result{};
  for (std::size_t i = 0; i < N; ++i) result[i] = value[i].get<T>();
  return result;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    for (const auto& [key, value] : parsed.items()) {
      if (key == "benchmark") config.benchmark = value.get<std::string>();
      else if (key == "dims") config.dims = to_array<std::size_t, 3>(value, "dims");
      else if (key == "variant") config.variant = value.get<std::string>();
      else if (key == "budget") config.budget = value.get<std::size_t>();
      else if (key == "trials") config.trials = value.get<std::size_t>();
      else if (key == "base_seed") config.base_seed = value.get<std::uint64_t>();
      else if (key == "sigma0") config.sigma0 = value.get<double>();
      else if (key == "init_box") config.init_box = to_array<double, 2>(value, "init_box");
      else if (key == "alpha") config.alpha = value.get<double>();
      else if (key == "q_min") config.q_min = value.get<double>();
      else if (key == "margin_mode") config.margin_mode = value.get<std::string>();
      else if (key == "centering") config.centering = value.get<bool>();
      else if (key == "kernels") config.kernels = value.get<std::size_t>();
      else if (key == "reference") config.reference = to_array<double, 2>(value, "reference");
      else if (key == "out_dir") config.out_dir = value.get<std::string>();
      else if (key == "categories") config.categories = value.get<std::size_t>();
      else if (key == "integer_range") config.integer_range = to_array<int, 2>(value, "integer_range");
      else if (key == "x_scale") config.x_scale = value.get<double>();
      else if (key == "z_scale") config.z_scale = value.get<double>();
      else throw ConfigError("unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

namespace {

BenchmarkSpec spec_from(const ExperimentConfig& config) {
  BenchmarkSpec spec =
      config.multi_objective()
          ? default_bi_spec(config.benchmark, config.dims[0], config.dims[1],
                            config.dims[2])
          : default_single_spec(config.benchmark, config.dims[0],
                                config.dims[1], config.dims[2]);
  if (config.categories) spec.categories = *config.categories;
  if (config.integer_range) {
    spec.integer_levels =
        integer_grid((*config.integer_range)[0], (*config.integer_range)[1]);
  }
  if (config.x_scale) spec.x_scale = *config.x_scale;
  if (config.z_scale) spec.z_scale = *config.z_scale;
  return spec;
}

OptimizerSettings settings_from(const ExperimentConfig& config) {
  OptimizerSettings settings;
  if (config.alpha) settings.margin.alpha = *config.alpha;
  if (config.margin_mode) {
    settings.margin.mode = *config.margin_mode == "original"
                               ? MarginMode::original
                               : MarginMode::modified;
  }
  if (config.centering) settings.margin.centering = *config.centering;
  if (config.q_min) settings.q_min = *config.q_min;
  return settings;
}

void apply_variant(const std::string& variant, OptimizerSettings& settings,
                   const ExperimentConfig& config) {
  if (variant == "catcmawm-original-margin") {
    if (!config.margin_mode) settings.margin.mode = MarginMode::original;
    if (!config.centering) settings.margin.centering = false;
  } else if (variant == "catcmawm-no-centering") {
    if (!config.centering) settings.margin.centering = false;
  }
}

std::size_t worker_count(std::size_t trials) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MVBBO_THREADS")) {
    const auto cap = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
    if (cap >= 1) workers = cap;
  }
  return std::min(workers, trials);
}

TrialRecord run_single_trial(const ExperimentConfig& config,
                             std::size_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const BenchmarkSpec spec = spec_from(config);
  const auto objective = make_single(spec);

  OptimizerSettings settings = settings_from(config);
  apply_variant(config.variant, settings, config);

  CatCmawmOptimizer::Init init;
  init.mean_box = config.init_box;
  init.sigma = config.sigma0;
  CatCmawmOptimizer optimizer(objective->space(), init,
                              config.base_seed + trial_index, settings);

  TrialRecord record;
  record.trial = trial_index;
  const std::size_t n_in = objective->space().integer_count();
  while (optimizer.should_stop(config.budget, std::nullopt) ==
         CatCmawmOptimizer::StopReason::none) {
    auto population = optimizer.ask();
    for (auto& solution : population) {
      solution.fitness = evaluate_solution(*objective, solution);
    }
    optimizer.tell(std::move(population));

    IterationPoint point;
    point.iteration = static_cast<std::size_t>(optimizer.iteration());
    point.evaluations = optimizer.evaluations();
    point.value = optimizer.best_fitness();
    point.mutation_rates.resize(n_in);
    for (std::size_t n = 0; n < n_in; ++n) {
      point.mutation_rates[n] =
          optimizer.gaussian().mutation_rate[static_cast<Eigen::Index>(n)];
    }
    record.points.push_back(std::move(point));
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

TrialRecord run_multi_trial(const ExperimentConfig& config,
                            std::size_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const BenchmarkSpec spec = spec_from(config);
  const auto objective = make_bi(spec);

  OptimizerSettings settings = settings_from(config);
  SofomoreOptimizer::KernelInit init;
  init.mean_box = config.init_box;
  init.sigma = config.sigma0;
  SofomoreOptimizer optimizer(
      *objective, config.kernels,
      Eigen::Vector2d(config.reference[0], config.reference[1]),
      config.base_seed + trial_index, init, settings);

  TrialRecord record;
  record.trial = trial_index;
  std::size_t step = 0;
  while (optimizer.evaluations() < config.budget) {
    optimizer.step();
    ++step;
    IterationPoint point;
    point.iteration = step;
    point.evaluations = optimizer.evaluations();
    point.value = optimizer.archive().hypervolume();
    record.points.push_back(std::move(point));
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  std::size_t arity = 0;
  try {
    arity = benchmark_arity(config.benchmark);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.variant != "catcmawm" &&
      config.variant != "catcmawm-original-margin" &&
      config.variant != "catcmawm-no-centering" &&
      config.variant != "como-catcmawm") {
    throw ConfigError("unknown variant: " + config.variant);
  }
  if (config.multi_objective() != (arity == 2)) {
    throw ConfigError("variant and benchmark arity do not match");
  }
  if (config.multi_objective() && config.kernels < 1) {
    throw ConfigError("kernels must be >= 1");
  }
  if (!(config.sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  if (!(config.init_box[0] < config.init_box[1])) {
    throw ConfigError("init_box must satisfy lo < hi");
  }
  const std::size_t total =
      config.dims[0] + config.dims[1] + config.dims[2];
  if (total < 1) throw ConfigError("dims must name at least one variable");
  const std::size_t lambda = default_hyperparameters(
                                 config.dims[0] + config.dims[1], total)
                                 .lambda;
  if (config.budget < lambda) {
    throw ConfigError("budget must cover at least one iteration (lambda = " +
                      std::to_string(lambda) + ")");
  }
  if (config.alpha && !(*config.alpha > 0.0 && *config.alpha < 0.5)) {
    throw ConfigError("alpha must lie in (0, 0.5)");
  }
  if (config.margin_mode && *config.margin_mode != "original" &&
      *config.margin_mode != "modified") {
    throw ConfigError("margin_mode must be 'original' or 'modified'");
  }
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<TrialRecord> records(config.trials);
  std::atomic<std::size_t> next{0};
  const std::size_t workers = worker_count(config.trials);

  auto work = [&]() {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= config.trials) return;
      records[index] = config.multi_objective()
                           ? run_multi_trial(config, index)
                           : run_single_trial(config, index);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }
  return records;
}

double percentile(std::vector<double> values, double fraction) {
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values.front();
  const double position =
      fraction * static_cast<double>(values.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  const auto upper = std::min(lower + 1, values.size() - 1);
  const double weight = position - static_cast<double>(lower);
  return values[lower] * (1.0 - weight) + values[upper] * weight;
}

std::vector<StatsRow> aggregate_stats(const std::vector<TrialRecord>& records) {
  if (records.empty()) return {};
  const std::size_t checkpoints = records.front().points.size();
  std::vector<StatsRow> stats(checkpoints);
  for (std::size_t i = 0; i < checkpoints; ++i) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& record : records) {
      values.push_back(record.points[i].value);
    }
    stats[i].evaluations = records.front().points[i].evaluations;
    stats[i].median = percentile(values, 0.5);
    stats[i].q25 = percentile(values, 0.25);
    stats[i].q75 = percentile(values, 0.75);
  }
  return stats;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string records_csv_text(const std::vector<TrialRecord>& records,
                             std::size_t mutation_rate_count,
                             bool multi_objective) {
  std::ostringstream out;
  out << "trial,iteration,evaluations,"
      << (multi_objective ? "hypervolume" : "best_fitness");
  if (!multi_objective) {
    for (std::size_t n = 1; n <= mutation_rate_count; ++n) {
      out << ",p_mut_" << n;
    }
  }
  out << "\n";
  for (const auto& record : records) {
    for (const auto& point : record.points) {
      out << record.trial << ',' << point.iteration << ','
          << point.evaluations << ',' << format_double(point.value);
      if (!multi_objective) {
        for (std::size_t n = 0; n < mutation_rate_count; ++n) {
          out << ',' << format_double(point.mutation_rates[n]);
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string stats_csv_text(const std::vector<StatsRow>& stats) {
  std::ostringstream out;
  out << "evaluations,median,q25,q75\n";
  for (const auto& row : stats) {
    out << row.evaluations << ',' << format_double(row.median) << ','
        << format_double(row.q25) << ',' << format_double(row.q75) << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_records_csv(const std::vector<TrialRecord>& records,
                      std::size_t mutation_rate_count, bool multi_objective,
                      const std::string& path) {
  write_file(path, records_csv_text(records, mutation_rate_count,
                                    multi_objective));
}

void emit_stats_csv(const std::vector<StatsRow>& stats,
                    const std::string& path) {
  write_file(path, stats_csv_text(stats));
}

std::vector<StatsRow> read_stats_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stats CSV: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "evaluations,median,q25,q75") {
    throw std::runtime_error("unexpected stats CSV header in " + path);
  }
  std::vector<StatsRow> stats;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    StatsRow row;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    fields >> row.evaluations >> row.median >> row.q25 >> row.q75;
    if (!fields) throw std::runtime_error("malformed stats CSV row: " + line);
    stats.push_back(row);
  }
  return stats;
}

}  // namespace mvbbo
