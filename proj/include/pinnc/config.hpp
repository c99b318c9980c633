#pragma once

#include "pinnc/benchmarks.hpp"
#include "pinnc/checkpoint.hpp"

#include <optional>
#include <string>

namespace pinnc {

/// Declarative run configuration; schema-validated, unknown keys rejected.
struct RunConfig {
  ProblemConfig problem;
  int checkpoint_every = 0;  // write intermediate checkpoints every N epochs
};

RunConfig parse_run_config_text(const std::string& text,
                                std::optional<std::uint64_t> seed_override = {},
                                std::optional<Preset> preset_override = {});
RunConfig parse_run_config_file(const std::string& path,
                                std::optional<std::uint64_t> seed_override = {},
                                std::optional<Preset> preset_override = {});

KktMethod::Kind kkt_kind_from_string(const std::string& name);

// Artifact writers (all atomic: temp file + rename).
void write_error_report(const ErrorReport& report, const std::string& path);
std::string train_record_jsonl(const TrainRecord& record);
void write_train_log(const std::vector<TrainRecord>& records, const std::string& path);
void write_predictions_csv(const FieldModel& field, const Eigen::MatrixXd& points,
                           const std::string& path);
void write_profile_csv(const PressureProfile& profile, const std::string& path);

}  // namespace pinnc
