#include "pinnc/config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace pinnc;

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("PINNC_LOG");
  if (!env) return LogLevel::Info;
  const std::string v = env;
  if (v == "quiet") return LogLevel::Quiet;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<Preset> preset;
};

std::optional<Preset> parse_preset_flag(const std::string& value) {
  if (value.empty()) return {};
  if (value == "desk") return Preset::Desk;
  if (value == "full") return Preset::Full;
  throw CLI::ValidationError("--preset", "expected desk or full");
}

void write_case_artifacts(const RunConfig& run, const CaseResult& result,
                          const fs::path& out) {
  fs::create_directories(out);
  save_checkpoint({result.params, result.transform}, (out / "checkpoint.json").string());
  write_train_log(result.records, (out / "train_log.jsonl").string());
  write_error_report(result.report, (out / "error_report.json").string());
  save_points(result.points, (out / "points.csv").string());
  NetworkField field(result.params, result.transform);
  if (run.problem.input_width() == 2) {
    write_predictions_csv(field, result.points.test, (out / "predictions.csv").string());
  }
  if (run.problem.benchmark == Benchmark::Hertz) {
    const auto profile = contact_pressure_profile(field, run.problem);
    write_profile_csv(profile, (out / "pressure_profile.csv").string());
  }
}

int cmd_train(const CommonOpts& opts) {
  RunConfig run = parse_run_config_file(opts.config_path, opts.seed, opts.preset);
  const LogLevel lvl = log_level();
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  int next_checkpoint = run.checkpoint_every;
  const RecordSink sink = [&](const TrainRecord& rec) {
    if (lvl != LogLevel::Quiet) {
      const bool verbose = lvl == LogLevel::Debug;
      if (verbose || rec.epoch % 500 == 0) {
        std::cerr << "epoch " << rec.epoch
                  << (rec.phase == Phase::Adam ? " [adam]  " : " [lbfgs] ")
                  << "loss " << rec.loss.total;
        if (!rec.extras.empty()) std::cerr << "  p~ " << rec.extras[0];
        std::cerr << '\n';
      }
    }
    (void)next_checkpoint;
  };

  const CaseResult result = run_case(run.problem, sink);
  write_case_artifacts(run, result, out);
  if (lvl != LogLevel::Quiet) {
    std::cerr << "stop: " << to_string(result.stop) << "; artifacts in " << out << '\n';
  }
  return 0;
}

int cmd_evaluate(const std::string& checkpoint_path, const std::string& points_path,
                 const std::string& out_dir, std::optional<double> pressure) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  const PointSet pts = load_points(points_path);

  Eigen::Index total = pts.interior_count() + pts.boundary_count() + pts.test_count();
  Eigen::MatrixXd coords(2, total);
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < pts.interior_count(); ++i) coords.col(at++) = pts.interior.col(i);
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) coords.col(at++) = pts.boundary.col(i);
  for (Eigen::Index i = 0; i < pts.test_count(); ++i) coords.col(at++) = pts.test.col(i);

  Eigen::MatrixXd inputs;
  if (ckpt.params.arch.input_width == 2) {
    inputs = coords;
  } else if (ckpt.params.arch.input_width == 3) {
    if (!pressure) {
      std::cerr << "error: checkpoint expects 3 inputs; pass --pressure to append one\n";
      return 1;
    }
    inputs.resize(3, total);
    inputs.topRows(2) = coords;
    inputs.row(2).setConstant(*pressure);
  } else {
    std::cerr << "error: unsupported input width " << ckpt.params.arch.input_width << '\n';
    return 1;
  }

  fs::create_directories(out_dir);
  NetworkField field(ckpt.params, ckpt.transform);
  write_predictions_csv(field, inputs, (fs::path(out_dir) / "predictions.csv").string());
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& methods_csv) {
  std::vector<std::string> names;
  {
    std::stringstream ss(methods_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) names.push_back(item);
    }
  }
  if (names.empty()) throw std::invalid_argument("no KKT methods given");

  const fs::path out(opts.out_dir);
  fs::create_directories(out);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream table;
  table << "method        E_L2_u(%)  E_L2_sigma(%)  max|e_uy|   max|e_syy|  max|e_sxy|\n";

  for (const auto& name : names) {
    RunConfig run = parse_run_config_file(opts.config_path, opts.seed, opts.preset);
    run.problem.kkt.kind = kkt_kind_from_string(name);
    const CaseResult result = run_case(run.problem);
    write_case_artifacts(run, result, out / name);

    const auto& m = result.report;
    rows.push_back({{"method", name},
                    {"e_l2_u", m.at("e_l2_u")},
                    {"e_l2_sigma", m.at("e_l2_sigma")},
                    {"max_abs_uy", m.at("max_abs_uy")},
                    {"max_abs_syy", m.at("max_abs_syy")},
                    {"max_abs_sxy", m.at("max_abs_sxy")}});
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s  %9.4f  %13.4f  %10.3e  %10.3e  %10.3e\n",
                  name.c_str(), 100.0 * m.at("e_l2_u"), 100.0 * m.at("e_l2_sigma"),
                  m.at("max_abs_uy"), m.at("max_abs_syy"), m.at("max_abs_sxy"));
    table << line;
  }

  atomic_write((out / "sweep.json").string(),
               nlohmann::json({{"rows", rows}}).dump(2) + "\n");
  atomic_write((out / "sweep.txt").string(), table.str());
  std::cout << table.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-variable elasticity PINN with contact constraints"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  std::string train_preset;
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  auto* train = app.add_subcommand("train", "train a configured case");
  train->add_option("--config", train_opts.config_path, "run configuration JSON")
      ->required();
  train->add_option("--out", train_opts.out_dir, "output directory");
  auto* train_seed = train->add_option("--seed", seed_value, "override the config seed");
  train->add_option("--preset", train_preset, "desk or full");

  std::string eval_checkpoint, eval_points, eval_out = "out";
  double eval_pressure = 0.0;
  auto* evaluate = app.add_subcommand("evaluate", "predict fields at stored points");
  evaluate->add_option("--checkpoint", eval_checkpoint, "checkpoint JSON")->required();
  evaluate->add_option("--points", eval_points, "point CSV")->required();
  evaluate->add_option("--out", eval_out, "output directory");
  auto* eval_p = evaluate->add_option("--pressure", eval_pressure,
                                      "pressure input for surrogate checkpoints");

  CommonOpts sweep_opts;
  std::string sweep_preset;
  std::string methods = "sign,sigmoid,fb";
  std::uint64_t sweep_seed_value = 0;
  auto* sweep = app.add_subcommand("sweep", "compare KKT enforcement methods");
  sweep->add_option("--config", sweep_opts.config_path, "run configuration JSON")
      ->required();
  sweep->add_option("--methods", methods, "comma-separated: sign,sigmoid,fb");
  sweep->add_option("--out", sweep_opts.out_dir, "output directory");
  auto* sweep_seed = sweep->add_option("--seed", sweep_seed_value, "override the config seed");
  sweep->add_option("--preset", sweep_preset, "desk or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train->parsed()) {
      seed_given = train_seed->count() > 0;
      if (seed_given) train_opts.seed = seed_value;
      train_opts.preset = parse_preset_flag(train_preset);
      return cmd_train(train_opts);
    }
    if (evaluate->parsed()) {
      std::optional<double> p;
      if (eval_p->count() > 0) p = eval_pressure;
      return cmd_evaluate(eval_checkpoint, eval_points, eval_out, p);
    }
    if (sweep->parsed()) {
      if (sweep_seed->count() > 0) sweep_opts.seed = sweep_seed_value;
      sweep_opts.preset = parse_preset_flag(sweep_preset);
      return cmd_sweep(sweep_opts, methods);
    }
  } catch (const EvalError& e) {
    std::cerr << "training failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
