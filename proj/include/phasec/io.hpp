#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasec/pipeline.hpp"

namespace phasec {

using json = nlohmann::ordered_json;

std::string version();

// Shortest decimal that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  explicit CsvTable(std::vector<std::string> cols) : columns(std::move(cols)) {}
  void add(const std::vector<double>& values);
  void add_raw(std::vector<std::string> cells);
  std::string render() const;
};

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& p);

struct FileRecord {
  std::string name;
  std::size_t rows = 0, columns = 0;
  std::string sha256;
};

// Collects written files so the manifest can list them.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  const std::filesystem::path& path() const { return dir_; }
  FileRecord write(const std::string& name, const CsvTable& table);
  const std::vector<FileRecord>& files() const { return files_; }
  // manifest.json is always the last file written
  void write_manifest(const std::string& command, const json& config, double wall_seconds,
                      const json& checks = json::object()) const;

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> files_;
};

CsvTable moments_table(const std::vector<Frame>& frames);
CsvTable criteria_table(const std::vector<Frame>& frames);
CsvTable entropies_table(const std::vector<Frame>& frames);
CsvTable fidelity_table(const std::vector<Frame>& frames, bool with_route_deviation);
// mu, nu, theta_nu, value
CsvTable wigner_grid_table(const PhaseGrid& g);
// eta, xi, re_value, im_value
CsvTable weyl_grid_table(const PhaseGrid& g);
CsvTable sweep_summary_table(const std::vector<SweepRow>& rows);
CsvTable sweep_windows_table(const std::vector<SweepRow>& rows);
std::string snapshot_name(const std::string& kind, double t);

// Writes every file selected by cfg.outputs and then the manifest.
std::vector<FileRecord> write_run(const RunConfig& cfg, const RunResult& result, OutputDir& out);

json config_to_json(const RunConfig& cfg);
// Keys mirror RunConfig fields; unknown keys and bad types raise ConfigError.
void apply_json(RunConfig& cfg, const json& j);
json load_json_file(const std::filesystem::path& p);

inline constexpr const char* kOutDirEnv = "PHASEC_OUT_DIR";
// explicit flag, then the environment variable, then the configured value
std::string resolve_output_dir(const std::optional<std::string>& flag, const std::string& configured);

}  // namespace phasec
