#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvbbo/harness.hpp"
#include "mvbbo/plot.hpp"

namespace {

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> benchmark;
  std::optional<std::string> variant;
  std::optional<std::vector<std::size_t>> dims;
  std::optional<std::size_t> budget;
  std::optional<double> sigma0;
  std::optional<double> alpha;
  std::optional<double> q_min;
  std::optional<std::string> margin_mode;
  std::optional<bool> centering;
  std::optional<std::vector<double>> init_box;
  std::optional<std::size_t> kernels;
  std::optional<std::vector<double>> reference;
};

void apply_flags(const RunFlags& flags, mvbbo::ExperimentConfig& config) {
  if (flags.seed) config.base_seed = *flags.seed;
  if (flags.trials) config.trials = *flags.trials;
  if (flags.out) config.out_dir = *flags.out;
  if (flags.benchmark) config.benchmark = *flags.benchmark;
  if (flags.variant) config.variant = *flags.variant;
  if (flags.dims) {
    if (flags.dims->size() != 3) {
      throw mvbbo::ConfigError("--dims expects three values");
    }
    config.dims = {(*flags.dims)[0], (*flags.dims)[1], (*flags.dims)[2]};
  }
  if (flags.budget) config.budget = *flags.budget;
  if (flags.sigma0) config.sigma0 = *flags.sigma0;
  if (flags.alpha) config.alpha = *flags.alpha;
  if (flags.q_min) config.q_min = *flags.q_min;
  if (flags.margin_mode) config.margin_mode = *flags.margin_mode;
  if (flags.centering) config.centering = *flags.centering;
  if (flags.init_box) {
    if (flags.init_box->size() != 2) {
      throw mvbbo::ConfigError("--init-box expects two values");
    }
    config.init_box = {(*flags.init_box)[0], (*flags.init_box)[1]};
  }
  if (flags.kernels) config.kernels = *flags.kernels;
  if (flags.reference) {
    if (flags.reference->size() != 2) {
      throw mvbbo::ConfigError("--reference expects two values");
    }
    config.reference = {(*flags.reference)[0], (*flags.reference)[1]};
  }
}

std::string experiment_stem(const mvbbo::ExperimentConfig& config) {
  return config.benchmark + "_" + std::to_string(config.dims[0]) + "-" +
         std::to_string(config.dims[1]) + "-" +
         std::to_string(config.dims[2]) + "_" + config.variant;
}

void execute_run(const mvbbo::ExperimentConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const auto records = mvbbo::run_experiment(config);
  const auto stats = mvbbo::aggregate_stats(records);

  const std::string stem =
      (fs::path(config.out_dir) / experiment_stem(config)).string();
  mvbbo::emit_records_csv(records, config.dims[1], config.multi_objective(),
                          stem + "_records.csv");
  mvbbo::emit_stats_csv(stats, stem + "_stats.csv");

  mvbbo::PlotOptions options;
  options.title = config.benchmark + " (" + std::to_string(config.dims[0]) +
                  "," + std::to_string(config.dims[1]) + "," +
                  std::to_string(config.dims[2]) + ")";
  options.y_label = config.multi_objective() ? "hypervolume" : "best fitness";
  options.log_y = !config.multi_objective();
  mvbbo::emit_plot(stats, stem + ".svg", options);

  std::cout << stem << "_records.csv\n" << stem << "_stats.csv\n"
            << stem << ".svg\n";
}

int execute_suite(const std::string& out_dir, std::size_t trials,
                  std::uint64_t seed) {
  const std::vector<std::array<std::size_t, 3>> single_dims = {
      {2, 2, 2}, {4, 4, 4}, {6, 6, 6}, {15, 15, 15}};
  const std::vector<std::string> single_benchmarks = {
      "SphereIntCOM", "EllipsoidIntCLO", "REllipsoidIntCLO", "MVProximity"};
  const std::vector<std::array<std::size_t, 3>> bi_dims = {{2, 2, 2},
                                                           {3, 3, 3}};

  for (const auto& dims : single_dims) {
    for (const auto& name : single_benchmarks) {
      mvbbo::ExperimentConfig config;
      config.benchmark = name;
      config.dims = dims;
      config.variant = "catcmawm";
      config.trials = trials;
      config.base_seed = seed;
      config.sigma0 = 1.0;
      config.init_box = {1.0, 3.0};
      // Desk-scale budgets; the larger grids get proportionally more.
      config.budget = 2000 * (dims[0] + dims[1] + dims[2]);
      config.out_dir = out_dir;
      std::cout << "suite: " << name << " (" << dims[0] << "," << dims[1]
                << "," << dims[2] << ")" << std::endl;
      execute_run(config);
    }
  }
  for (const auto& dims : bi_dims) {
    mvbbo::ExperimentConfig config;
    config.benchmark = "DSIntLFTL";
    config.dims = dims;
    config.variant = "como-catcmawm";
    config.trials = trials;
    config.base_seed = seed;
    config.sigma0 = 4.0;
    config.init_box = {-5.0, 15.0};
    config.kernels = 5;
    config.reference = {5.0, 5.0};
    config.budget = 20000;
    config.out_dir = out_dir;
    std::cout << "suite: DSIntLFTL (" << dims[0] << "," << dims[1] << ","
              << dims[2] << ")" << std::endl;
    execute_run(config);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed-variable black-box optimization experiment harness"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("--config", flags.config_path, "JSON config file")
      ->required();
  run->add_option("--seed", flags.seed, "override base_seed");
  run->add_option("--trials", flags.trials, "override trials");
  run->add_option("--out", flags.out, "override out_dir");
  run->add_option("--benchmark", flags.benchmark, "override benchmark");
  run->add_option("--variant", flags.variant, "override variant");
  run->add_option("--dims", flags.dims, "override dims (three values)");
  run->add_option("--budget", flags.budget, "override budget");
  run->add_option("--sigma0", flags.sigma0, "override sigma0");
  run->add_option("--alpha", flags.alpha, "override margin alpha");
  run->add_option("--q-min", flags.q_min, "override categorical floor");
  run->add_option("--margin-mode", flags.margin_mode,
                  "override margin mode (original|modified)");
  run->add_option("--centering", flags.centering,
                  "override integer centering");
  run->add_option("--init-box", flags.init_box,
                  "override initial mean box (two values)");
  run->add_option("--kernels", flags.kernels, "override kernel count");
  run->add_option("--reference", flags.reference,
                  "override reference point (two values)");

  std::string suite_out = "suite_out";
  std::size_t suite_trials = 10;
  std::uint64_t suite_seed = 1;
  auto* suite = app.add_subcommand(
      "suite", "desk-scale benchmark grid over the standard settings");
  suite->add_option("--out", suite_out, "output directory");
  suite->add_option("--trials", suite_trials, "trials per experiment");
  suite->add_option("--seed", suite_seed, "base seed");

  std::string plot_in;
  std::string plot_out;
  bool plot_linear = false;
  std::string plot_title;
  std::string plot_y_label = "best fitness";
  auto* plot = app.add_subcommand("plot", "render a stats CSV as SVG");
  plot->add_option("--in", plot_in, "stats CSV produced by run")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();
  plot->add_flag("--linear-y", plot_linear, "linear y axis (default log)");
  plot->add_option("--title", plot_title, "plot title");
  plot->add_option("--y-label", plot_y_label, "y axis label");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      mvbbo::ExperimentConfig config = mvbbo::load_config(flags.config_path);
      apply_flags(flags, config);
      mvbbo::validate(config);
      execute_run(config);
      return 0;
    }
    if (suite->parsed()) {
      return execute_suite(suite_out, suite_trials, suite_seed);
    }
    if (plot->parsed()) {
      const auto stats = mvbbo::read_stats_csv(plot_in);
      mvbbo::PlotOptions options;
      options.log_y = !plot_linear;
      options.title = plot_title;
      options.y_label = plot_y_label;
      mvbbo::emit_plot(stats, plot_out, options);
      std::cout << plot_out << "\n";
      return 0;
    }
  } catch (const mvbbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
