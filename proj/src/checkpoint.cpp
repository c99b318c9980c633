#include "pinnc/checkpoint.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pinnc {

using nlohmann::json;

namespace {

constexpr int kVersion = 1;

const char* offset_name(OffsetRule r) {
  switch (r) {
    case OffsetRule::Zero: return "zero";
    case OffsetRule::Constant: return "constant";
    case OffsetRule::NegPressure: return "neg_pressure";
  }
  return "zero";
}

OffsetRule offset_from(const std::string& s) {
  if (s == "zero") return OffsetRule::Zero;
  if (s == "constant") return OffsetRule::Constant;
  if (s == "neg_pressure") return OffsetRule::NegPressure;
  throw std::runtime_error("unknown offset rule: " + s);
}

const char* source_name(PressureSource s) {
  switch (s) {
    case PressureSource::Constant: return "constant";
    case PressureSource::ExtraParam: return "extra_param";
    case PressureSource::Input: return "input";
  }
  return "constant";
}

PressureSource source_from(const std::string& s) {
  if (s == "constant") return PressureSource::Constant;
  if (s == "extra_param") return PressureSource::ExtraParam;
  if (s == "input") return PressureSource::Input;
  throw std::runtime_error("unknown pressure source: " + s);
}

json transform_to_json(const OutputTransform& t) {
  json comps = json::array();
  for (const auto& c : t.comps) {
    json factors = json::array();
    for (const auto& f : c.h) factors.push_back({{"a", f.a}, {"bx", f.bx}, {"by", f.by}});
    comps.push_back({{"offset", offset_name(c.offset)},
                     {"constant", c.constant},
                     {"h", factors},
                     {"scale", c.scale}});
  }
  return {{"components", comps},
          {"pressure_source", source_name(t.pressure_source)},
          {"pressure", t.pressure},
          {"pressure_extra", t.pressure_extra},
          {"pressure_input", t.pressure_input}};
}

OutputTransform transform_from_json(const json& j) {
  OutputTransform t;
  for (const auto& c : j.at("components")) {
    ComponentTransform ct;
    ct.offset = offset_from(c.at("offset").get<std::string>());
    ct.constant = c.at("constant").get<double>();
    ct.scale = c.at("scale").get<double>();
    for (const auto& f : c.at("h")) {
      ct.h.push_back({f.at("a").get<double>(), f.at("bx").get<double>(),
                      f.at("by").get<double>()});
    }
    t.comps.push_back(std::move(ct));
  }
  t.pressure_source = source_from(j.at("pressure_source").get<std::string>());
  t.pressure = j.at("pressure").get<double>();
  t.pressure_extra = j.at("pressure_extra").get<int>();
  t.pressure_input = j.at("pressure_input").get<int>();
  return t;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename failed for " + path + ": " + ec.message());
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  const auto& p = ckpt.params;
  json layers = json::array();
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    const auto& w = p.weights[l];
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) values.push_back(w(r, c));
    }
    std::vector<double> bias(p.biases[l].data(), p.biases[l].data() + p.biases[l].size());
    layers.push_back({{"rows", w.rows()}, {"cols", w.cols()},
                      {"weights", values}, {"bias", bias}});
  }
  json extras = json::array();
  for (std::size_t i = 0; i < p.extra_names.size(); ++i) {
    extras.push_back({{"name", p.extra_names[i]},
                      {"value", p.extra_values[static_cast<Eigen::Index>(i)]}});
  }
  json root = {{"format", "pinnc-checkpoint"},
               {"version", kVersion},
               {"input_width", p.arch.input_width},
               {"hidden", p.arch.hidden},
               {"output_width", p.arch.output_width},
               {"seed", p.seed},
               {"layers", layers},
               {"extras", extras},
               {"transform", transform_to_json(ckpt.transform)}};
  atomic_write(path, root.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
  json root;
  f >> root;
  if (root.value("format", "") != "pinnc-checkpoint") {
    throw std::runtime_error("not a pinnc checkpoint: " + path);
  }
  if (root.at("version").get<int>() != kVersion) {
    throw std::runtime_error("unsupported checkpoint version");
  }
  Checkpoint ckpt;
  auto& p = ckpt.params;
  p.arch.input_width = root.at("input_width").get<int>();
  p.arch.hidden = root.at("hidden").get<std::vector<int>>();
  p.arch.output_width = root.at("output_width").get<int>();
  p.arch.validate();
  p.seed = root.at("seed").get<std::uint64_t>();
  const auto& layers = root.at("layers");
  if (static_cast<int>(layers.size()) != p.arch.layer_count()) {
    throw std::runtime_error("checkpoint layer count mismatch");
  }
  for (int l = 0; l < p.arch.layer_count(); ++l) {
    const auto& jl = layers.at(static_cast<std::size_t>(l));
    const auto rows = jl.at("rows").get<Eigen::Index>();
    const auto cols = jl.at("cols").get<Eigen::Index>();
    if (rows != p.arch.width_out(l) || cols != p.arch.width_in(l)) {
      throw std::runtime_error("checkpoint layer shape mismatch");
    }
    const auto values = jl.at("weights").get<std::vector<double>>();
    const auto bias = jl.at("bias").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != rows * cols ||
        static_cast<Eigen::Index>(bias.size()) != rows) {
      throw std::runtime_error("checkpoint layer value count mismatch");
    }
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        w(r, c) = values[static_cast<std::size_t>(r * cols + c)];
      }
    }
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(
        Eigen::Map<const Eigen::VectorXd>(bias.data(), static_cast<Eigen::Index>(bias.size())));
  }
  p.extra_values = Eigen::VectorXd(root.at("extras").size());
  Eigen::Index at = 0;
  for (const auto& e : root.at("extras")) {
    p.extra_names.push_back(e.at("name").get<std::string>());
    p.extra_values[at++] = e.at("value").get<double>();
  }
  ckpt.transform = transform_from_json(root.at("transform"));
  if (static_cast<int>(ckpt.transform.comps.size()) != p.arch.output_width) {
    throw std::runtime_error("checkpoint transform width mismatch");
  }
  return ckpt;
}

}  // namespace pinnc
