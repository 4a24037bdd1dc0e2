// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "trajenergy/csv.hpp"
#include "trajenergy/experiment.hpp"
#include "trajenergy/log.hpp"
#include "trajenergy/svg.hpp"

namespace {

using namespace trajenergy;

struct CommonArgs {
  std::string robot;
  std::string scene;
  std::string waypoints;
  std::vector<double> start;
  std::vector<double> goal;
  double duration = 2.0;
  std::string generator = "sinusoidal";
  double lambda = 0.1;
  double dt = 0.01;
  bool scale = true;
  bool avoid = true;
  int seed = 0;
  std::string out_dir = ".";
};

void add_common_options(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--robot", args->robot,
                  "Robot config JSON (default: bundled 7-joint model)");
  cmd->add_option("--scene", args->scene, "Scene JSON (spherical obstacles)");
  cmd->add_option("--waypoints", args->waypoints,
                  "Waypoint JSON; overrides --start/--goal");
  cmd->add_option("--start", args->start,
                  "Start joint vector, comma separated (default: zeros)")
      ->delimiter(',');
  cmd->add_option("--goal", args->goal,
                  "Goal joint vector, comma separated (default: all 0.5)")
      ->delimiter(',');
  cmd->add_option("--duration", args->duration,
                  "Motion time for --start/--goal runs [s]");
  cmd->add_option("--generator", args->generator, "Trajectory generator")
      ->check(CLI::IsMember({"cubic", "sinusoidal"}));
  cmd->add_option("--lambda", args->lambda, "Velocity weight in the cost");
  cmd->add_option("--dt", args->dt, "Sampling/integration step [s]");
  cmd->add_flag("--scale,!--no-scale", args->scale,
                "Apply velocity scaling against joint limits");
  cmd->add_flag("--avoid,!--no-avoid", args->avoid,
                "Deform the trajectory around scene obstacles");
  cmd->add_option("--seed", args->seed, "Reserved for randomized fixtures");
  cmd->add_option("--out", args->out_dir, "Output directory");
}

ExperimentConfig to_config(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.robot_path = args.robot;
  cfg.scene_path = args.scene;
  cfg.waypoints_path = args.waypoints;
  if (!args.start.empty()) {
    cfg.start = Eigen::Map<const Eigen::VectorXd>(args.start.data(),
                                                  args.start.size());
  }
  if (!args.goal.empty()) {
    cfg.goal =
        Eigen::Map<const Eigen::VectorXd>(args.goal.data(), args.goal.size());
  }
  cfg.duration = args.duration;
  cfg.generator = generator_from_string(args.generator);
  cfg.lambda = args.lambda;
  cfg.dt = args.dt;
  cfg.scaling = args.scale;
  cfg.avoidance = args.avoid;
  cfg.seed = args.seed;
  return cfg;
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int cmd_plan(const CommonArgs& args) {
  const ExperimentResult result = run_experiment(to_config(args));
  const std::filesystem::path dir = prepare_out_dir(args.out_dir);
  const std::filesystem::path csv_path = dir / "trajectory.csv";
  write_csv(csv_path.string(), trajectory_to_csv(result.trajectory, args.dt));
  std::cout << "wrote " << csv_path.string() << " ("
            << result.trajectory.dofs() << " joints, duration "
            << format_full(result.trajectory.duration()) << " s, alpha "
            << format_full(result.alpha) << ")\n";
  return 0;
}

int cmd_report(const CommonArgs& args) {
  const ExperimentResult result = run_experiment(to_config(args));
  const std::filesystem::path dir = prepare_out_dir(args.out_dir);
  const MetricsReport& m = result.metrics;
  write_csv((dir / "metrics.csv").string(), metrics_to_csv(m));
  write_line_plot_svg((dir / "energy.svg").string(), "Instantaneous cost",
                      m.time, m.power_series, "t [s]", "power");
  write_line_plot_svg((dir / "accel.svg").string(), "Acceleration norm",
                      m.time, m.accel_norm, "t [s]", "||qdd|| [rad/s^2]");
  write_line_plot_svg((dir / "cumulative.svg").string(), "Cumulative cost",
                      m.time, m.cumulative_energy, "t [s]", "energy");
  write_line_plot_svg((dir / "velocity.svg").string(), "Velocity magnitude",
                      m.time, m.velocity_magnitude, "t [s]", "||qd|| [rad/s]");
  std::cout << "wrote metrics.csv and 4 plots to " << dir.string()
            << " (total cost " << format_full(result.energy.total)
            << ", smoothness " << format_full(m.smoothness_msj) << ")\n";
  return 0;
}

int cmd_compare(const std::vector<std::string>& config_paths, int jobs,
                const std::string& out_dir) {
  std::vector<ExperimentConfig> configs;
  configs.reserve(config_paths.size());
  for (const std::string& path : config_paths) {
    configs.push_back(load_experiment_config(path));
  }

  std::vector<ExperimentResult> results(configs.size());
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int workers = std::max(1, std::min<int>(jobs, configs.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= configs.size()) break;
          try {
            results[i] = run_experiment(configs[i]);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  const int dofs = results.front().robot.n_joints();
  for (const ExperimentResult& r : results) {
    if (r.robot.n_joints() != dofs) {
      throw DimensionError("compare: configs use robots with different joint counts");
    }
  }

  struct Row {
    std::string name;
    std::size_t config_index;  // 1-based input position
    double total, torque, velocity, smoothness;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    rows.push_back(Row{std::filesystem::path(config_paths[i]).stem().string(),
                       i + 1, results[i].energy.total,
                       results[i].energy.torque_term,
                       results[i].energy.velocity_term,
                       results[i].metrics.smoothness_msj});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.total < b.total; });
  const Row& best = rows.front();

  const auto pct = [](double value, double reference) {
    return reference != 0.0 ? 100.0 * (value - reference) / reference : 0.0;
  };
  std::printf("%-24s %14s %14s %14s %14s %10s\n", "config", "total",
              "torque_term", "lambda_term", "smoothness", "delta%");
  CsvTable table;
  table.header = {"rank",           "config_index",  "total",
                  "torque_term",    "velocity_term", "smoothness_msj",
                  "delta_total_pct"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    const double delta = pct(row.total, best.total);
    std::printf("%-24s %14.6g %14.6g %14.6g %14.6g %9.3f%%\n",
                row.name.c_str(), row.total, row.torque, row.velocity,
                row.smoothness, delta);
    table.rows.push_back({static_cast<double>(i + 1),
                          static_cast<double>(row.config_index), row.total,
                          row.torque, row.velocity, row.smoothness, delta});
  }
  const std::filesystem::path dir = prepare_out_dir(out_dir);
  write_csv((dir / "compare.csv").string(), table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "trajenergy: energy-aware joint-space trajectory planning for "
      "serial-link manipulators"};
  app.require_subcommand(1);

  CommonArgs plan_args;
  CLI::App* plan = app.add_subcommand(
      "plan", "Plan a trajectory and write the sampled CSV");
  add_common_options(plan, &plan_args);

  CommonArgs report_args;
  CLI::App* report = app.add_subcommand(
      "report", "Plan, replay, and write metrics CSV plus SVG plots");
  add_common_options(report, &report_args);

  std::vector<std::string> compare_configs;
  int jobs = 1;
  std::string compare_out = ".";
  CLI::App* compare = app.add_subcommand(
      "compare", "Rank experiment configs by total cost");
  compare->add_option("configs", compare_configs,
                      "Experiment config JSON files (two or more)")
      ->required()
      ->expected(2, -1);
  compare->add_option("--jobs", jobs, "Parallel pipeline workers");
  compare->add_option("--out", compare_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (plan->parsed()) return cmd_plan(plan_args);
    if (report->parsed()) return cmd_report(report_args);
    if (compare->parsed()) return cmd_compare(compare_configs, jobs, compare_out);
  } catch (const trajenergy::PlanningError& e) {
    std::cerr << "planning failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
