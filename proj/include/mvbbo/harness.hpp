#ifndef MVBBO_HARNESS_HPP
#define MVBBO_HARNESS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvbbo {

/// Raised on malformed configuration (bad field, unknown benchmark, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One experiment: a benchmark, an optimizer variant, and the measurement
/// protocol (trials x budget with a common base seed).
struct ExperimentConfig {
  std::string benchmark = "SphereIntCOM";
  std::array<std::size_t, 3> dims{3, 3, 3};
  std::string variant = "catcmawm";
  std::size_t budget = 10000;
  std::size_t trials = 1;
  std::uint64_t base_seed = 1;
  double sigma0 = 1.0;
  std::array<double, 2> init_box{1.0, 3.0};
  std::optional<double> alpha;
  std::optional<double> q_min;
  std::optional<std::string> margin_mode;  ///< "original" | "modified"
  std::optional<bool> centering;
  std::size_t kernels = 5;                  ///< multi-objective only
  std::array<double, 2> reference{5.0, 5.0};
  std::string out_dir = ".";
  // Benchmark geometry overrides.
  std::optional<std::size_t> categories;
  std::optional<std::array<int, 2>> integer_range;
  std::optional<double> x_scale;
  std::optional<double> z_scale;

  bool multi_objective() const { return variant == "como-catcmawm"; }
};

/// Parses a JSON object with exactly the ExperimentConfig field names.
ExperimentConfig parse_config_json(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Throws ConfigError on any invariant violation.
void validate(const ExperimentConfig& config);

/// One checkpoint of one trial: the best fitness so far (single-objective) or
/// the archive hypervolume (multi-objective) after `evaluations` evaluations,
/// plus the mutation-rate snapshot for the single-objective traces.
struct IterationPoint {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;
  double value = 0.0;
  std::vector<double> mutation_rates;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::vector<IterationPoint> points;
  double wall_seconds = 0.0;
};

/// Runs all trials (in parallel up to MVBBO_THREADS workers); records are
/// ordered by trial index and independent of the worker count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

struct StatsRow {
  std::size_t evaluations = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

/// Linear-interpolation percentile.
double percentile(std::vector<double> values, double fraction);

/// Median and inter-quartile band across trials per evaluation checkpoint.
std::vector<StatsRow> aggregate_stats(const std::vector<TrialRecord>& records);

/// CSV emission with shortest-round-trip number formatting (UTF-8, LF).
void emit_records_csv(const std::vector<TrialRecord>& records,
                      std::size_t mutation_rate_count, bool multi_objective,
                      const std::string& path);
void emit_stats_csv(const std::vector<StatsRow>& stats,
                    const std::string& path);
std::vector<StatsRow> read_stats_csv(const std::string& path);

/// Serialization helpers shared by the CSV writers.
std::string format_double(double value);
std::string records_csv_text(const std::vector<TrialRecord>& records,
                             std::size_t mutation_rate_count,
                             bool multi_objective);
std::string stats_csv_text(const std::vector<StatsRow>& stats);

}  // namespace mvbbo

#endif  // MVBBO_HARNESS_HPP
