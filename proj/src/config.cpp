#include "pinnc/config.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pinnc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) ok = true;
    }
    if (!ok) fail(where, "unknown key '" + key + "'");
  }
}

double get_num(const json& obj, const std::string& where, const char* key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) fail(where, std::string(key) + " must be a number");
  return obj.at(key).get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer()) fail(where, std::string(key) + " must be an integer");
  return obj.at(key).get<int>();
}

Benchmark benchmark_from(const std::string& s) {
  if (s == "lame") return Benchmark::Lame;
  if (s == "block") return Benchmark::Block;
  if (s == "hertz") return Benchmark::Hertz;
  fail("case", "expected one of lame, block, hertz; got '" + s + "'");
}

RunMode mode_from(const std::string& s) {
  if (s == "forward") return RunMode::Forward;
  if (s == "data_enhanced") return RunMode::DataEnhanced;
  if (s == "inverse") return RunMode::Inverse;
  if (s == "surrogate") return RunMode::Surrogate;
  fail("mode", "expected one of forward, data_enhanced, inverse, surrogate");
}

Preset preset_from(const std::string& s) {
  if (s == "desk") return Preset::Desk;
  if (s == "full") return Preset::Full;
  fail("preset", "expected desk or full");
}

}  // namespace

KktMethod::Kind kkt_kind_from_string(const std::string& name) {
  if (name == "sign") return KktMethod::Kind::SignBased;
  if (name == "sigmoid") return KktMethod::Kind::SigmoidBased;
  if (name == "fb") return KktMethod::Kind::FischerBurmeister;
  throw std::invalid_argument("unknown KKT method '" + name +
                              "' (expected sign, sigmoid, or fb)");
}

RunConfig parse_run_config_text(const std::string& text,
                                std::optional<std::uint64_t> seed_override,
                                std::optional<Preset> preset_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) fail("root", "must be a JSON object");
  check_keys(root, "root",
             {"case", "mode", "preset", "seed", "material", "load", "kkt", "weights",
              "network", "points", "train", "geometry", "data", "inverse", "surrogate",
              "output"});
  if (!root.contains("case") || !root.at("case").is_string()) {
    fail("root", "required string key 'case' missing");
  }

  const Benchmark benchmark = benchmark_from(root.at("case").get<std::string>());
  RunMode mode = RunMode::Forward;
  if (root.contains("mode")) mode = mode_from(root.at("mode").get<std::string>());
  Preset preset = Preset::Desk;
  if (root.contains("preset")) preset = preset_from(root.at("preset").get<std::string>());
  if (preset_override) preset = *preset_override;

  RunConfig run;
  run.problem = default_config(benchmark, mode, preset);
  ProblemConfig& cfg = run.problem;

  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned() && !root.at("seed").is_number_integer()) {
      fail("seed", "must be a non-negative integer");
    }
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  if (seed_override) cfg.seed = *seed_override;

  if (root.contains("material")) {
    const auto& m = root.at("material");
    check_keys(m, "material", {"E", "nu"});
    cfg.youngs = get_num(m, "material", "E", cfg.youngs);
    cfg.poisson = get_num(m, "material", "nu", cfg.poisson);
  }
  cfg.load = get_num(root, "load", "load", cfg.load);

  if (root.contains("kkt")) {
    const auto& k = root.at("kkt");
    check_keys(k, "kkt", {"method", "w", "w1", "w2", "w3", "delta_g", "delta_p"});
    if (k.contains("method")) {
      cfg.kkt.kind = kkt_kind_from_string(k.at("method").get<std::string>());
    }
    if (k.contains("w")) cfg.kkt.w1 = get_num(k, "kkt", "w", cfg.kkt.w1);
    cfg.kkt.w1 = get_num(k, "kkt", "w1", cfg.kkt.w1);
    cfg.kkt.w2 = get_num(k, "kkt", "w2", cfg.kkt.w2);
    cfg.kkt.w3 = get_num(k, "kkt", "w3", cfg.kkt.w3);
    cfg.kkt.delta_g = get_num(k, "kkt", "delta_g", cfg.kkt.delta_g);
    cfg.kkt.delta_p = get_num(k, "kkt", "delta_p", cfg.kkt.delta_p);
  }

  if (root.contains("weights")) {
    const auto& w = root.at("weights");
    check_keys(w, "weights", {"pde", "dbc", "nbc", "exp", "fs", "kkt"});
    const auto read_vec = [&](const char* key, auto& target, int expect) {
      if (!w.contains(key)) return;
      const auto& arr = w.at(key);
      if (!arr.is_array() || static_cast<int>(arr.size()) != expect) {
        fail("weights", std::string(key) + " must be an array of " +
                            std::to_string(expect) + " numbers");
      }
      for (int i = 0; i < expect; ++i) target[i] = arr.at(i).get<double>();
    };
    read_vec("pde", cfg.weights.pde, 5);
    read_vec("dbc", cfg.weights.dbc, 2);
    read_vec("nbc", cfg.weights.nbc, 2);
    read_vec("exp", cfg.weights.exp, 5);
    cfg.weights.fs = get_num(w, "weights", "fs", cfg.weights.fs);
    cfg.weights.kkt = get_num(w, "weights", "kkt", cfg.weights.kkt);
  }

  if (root.contains("network")) {
    const auto& n = root.at("network");
    check_keys(n, "network", {"hidden"});
    if (n.contains("hidden")) {
      if (!n.at("hidden").is_array() || n.at("hidden").empty()) {
        fail("network", "hidden must be a non-empty array");
      }
      cfg.hidden = n.at("hidden").get<std::vector<int>>();
    }
  }

  if (root.contains("points")) {
    const auto& p = root.at("points");
    check_keys(p, "points", {"interior", "boundary", "test"});
    cfg.counts.interior = get_int(p, "points", "interior", cfg.counts.interior);
    cfg.counts.boundary = get_int(p, "points", "boundary", cfg.counts.boundary);
    if (p.contains("test")) {
      const auto& t = p.at("test");
      if (!t.is_array() || t.size() != 2) fail("points", "test must be [n1, n2]");
      cfg.counts.test_n1 = t.at(0).get<int>();
      cfg.counts.test_n2 = t.at(1).get<int>();
    }
  }

  if (root.contains("train")) {
    const auto& t = root.at("train");
    check_keys(t, "train",
               {"adam_epochs", "adam_lr", "lbfgs_max_iters", "lbfgs_history",
                "grad_tol", "rel_loss_tol"});
    cfg.adam.epochs = get_int(t, "train", "adam_epochs", cfg.adam.epochs);
    cfg.adam.lr = get_num(t, "train", "adam_lr", cfg.adam.lr);
    cfg.lbfgs.max_iters = get_int(t, "train", "lbfgs_max_iters", cfg.lbfgs.max_iters);
    cfg.lbfgs.history = get_int(t, "train", "lbfgs_history", cfg.lbfgs.history);
    cfg.lbfgs.grad_tol = get_num(t, "train", "grad_tol", cfg.lbfgs.grad_tol);
    cfg.lbfgs.rel_loss_tol = get_num(t, "train", "rel_loss_tol", cfg.lbfgs.rel_loss_tol);
  }

  if (root.contains("geometry")) {
    const auto& g = root.at("geometry");
    check_keys(g, "geometry",
               {"r_inner", "r_outer", "edge", "radius", "alpha_deg", "symmetric_half",
                "contact_boost"});
    cfg.lame_r_inner = get_num(g, "geometry", "r_inner", cfg.lame_r_inner);
    cfg.lame_r_outer = get_num(g, "geometry", "r_outer", cfg.lame_r_outer);
    cfg.block_edge = get_num(g, "geometry", "edge", cfg.block_edge);
    cfg.hertz.radius = get_num(g, "geometry", "radius", cfg.hertz.radius);
    cfg.hertz.alpha_deg = get_num(g, "geometry", "alpha_deg", cfg.hertz.alpha_deg);
    cfg.hertz.contact_boost = get_num(g, "geometry", "contact_boost", cfg.hertz.contact_boost);
    if (g.contains("symmetric_half")) {
      if (!g.at("symmetric_half").is_boolean()) fail("geometry", "symmetric_half must be a bool");
      cfg.hertz.symmetric_half = g.at("symmetric_half").get<bool>();
    }
  }

  if (root.contains("data")) {
    const auto& d = root.at("data");
    check_keys(d, "data", {"csv"});
    if (d.contains("csv")) cfg.data_csv = d.at("csv").get<std::string>();
  }

  if (root.contains("inverse")) {
    const auto& i = root.at("inverse");
    check_keys(i, "inverse", {"initial_guess"});
    cfg.inverse_initial_guess =
        get_num(i, "inverse", "initial_guess", cfg.inverse_initial_guess);
  }

  if (root.contains("surrogate")) {
    const auto& s = root.at("surrogate");
    check_keys(s, "surrogate", {"pressure_range", "chunks", "eval_pressures"});
    if (s.contains("pressure_range")) {
      const auto& r = s.at("pressure_range");
      if (!r.is_array() || r.size() != 2) fail("surrogate", "pressure_range must be [min, max]");
      cfg.surrogate.pressure_min = r.at(0).get<double>();
      cfg.surrogate.pressure_max = r.at(1).get<double>();
    }
    cfg.surrogate.chunks = get_int(s, "surrogate", "chunks", cfg.surrogate.chunks);
    if (s.contains("eval_pressures")) {
      cfg.surrogate.eval_pressures = s.at("eval_pressures").get<std::vector<double>>();
    }
  }

  if (root.contains("output")) {
    const auto& o = root.at("output");
    check_keys(o, "output", {"checkpoint_every", "profile_samples"});
    run.checkpoint_every = get_int(o, "output", "checkpoint_every", run.checkpoint_every);
    cfg.profile_samples = get_int(o, "output", "profile_samples", cfg.profile_samples);
  }

  cfg.validate();
  return run;
}

RunConfig parse_run_config_file(const std::string& path,
                                std::optional<std::uint64_t> seed_override,
                                std::optional<Preset> preset_override) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_run_config_text(ss.str(), seed_override, preset_override);
}

// ---------------------------------------------------------------------------
// Artifact writers
// ---------------------------------------------------------------------------

void write_error_report(const ErrorReport& report, const std::string& path) {
  json metrics = json::object();
  for (const auto& [key, value] : report.metrics) metrics[key] = value;
  const json root = {{"format", "pinnc-error-report"}, {"metrics", metrics}};
  atomic_write(path, root.dump(2) + "\n");
}

std::string train_record_jsonl(const TrainRecord& record) {
  json parts = json::array();
  for (int i = 0; i < 5; ++i) parts.push_back(record.loss.pde_parts[i]);
  json line = {{"epoch", record.epoch},
               {"phase", record.phase == Phase::Adam ? "adam" : "lbfgs"},
               {"total", record.loss.total},
               {"pde", record.loss.pde},
               {"dbc", record.loss.dbc},
               {"nbc", record.loss.nbc},
               {"exp", record.loss.exp},
               {"fs", record.loss.fs},
               {"kkt", record.loss.kkt},
               {"pde_parts", parts},
               {"wall_s", record.wall_seconds}};
  if (!record.extras.empty()) line["extras"] = record.extras;
  return line.dump();
}

void write_train_log(const std::vector<TrainRecord>& records, const std::string& path) {
  std::ostringstream os;
  for (const auto& rec : records) os << train_record_jsonl(rec) << '\n';
  atomic_write(path, os.str());
}

void write_predictions_csv(const FieldModel& field, const Eigen::MatrixXd& points,
                           const std::string& path) {
  Eigen::MatrixXd y, jx, jy;
  field.eval(points, false, y, jx, jy);
  std::ostringstream os;
  os << "x,y,ux,uy,sxx,syy,sxy\n";
  char buf[64];
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", points(0, i));
    os << buf;
    std::snprintf(buf, sizeof(buf), ",%.17g", points(1, i));
    os << buf;
    for (int c = 0; c < 5; ++c) {
      std::snprintf(buf, sizeof(buf), ",%.17g", y(c, i));
      os << buf;
    }
    os << '\n';
  }
  atomic_write(path, os.str());
}

void write_profile_csv(const PressureProfile& profile, const std::string& path) {
  std::ostringstream os;
  os << "x,pc\n";
  char buf[96];
  for (Eigen::Index i = 0; i < profile.x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", profile.x[i], profile.pc[i]);
    os << buf << '\n';
  }
  atomic_write(path, os.str());
}

}  // namespace pinnc
