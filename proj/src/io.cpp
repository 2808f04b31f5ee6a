#include "phasec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

namespace phasec {

namespace fs = std::filesystem;

namespace {

const char* kAxes[3] = {"x", "y", "z"};
const char* kPairs[3] = {"xy", "xz", "yz"};

double flag(bool b) { return b ? 1.0 : 0.0; }

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

std::string version() {
#ifdef PHASEC_VERSION
  return PHASEC_VERSION;
#else
  return "unknown";
#endif
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0 as well
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_raw(std::move(cells));
}

void CsvTable::add_raw(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw std::logic_error("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
  return os.str();
}

std::string sha256_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return sha256_hex(ss.str());
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

FileRecord OutputDir::write(const std::string& name, const CsvTable& table) {
  const std::string text = table.render();
  write_text(dir_ / name, text);
  FileRecord r{name, table.rows.size(), table.columns.size(), sha256_hex(text)};
  files_.push_back(r);
  return r;
}

void OutputDir::write_manifest(const std::string& command, const json& config, double wall_seconds,
                               const json& checks) const {
  json m;
  m["tool"] = "phasec";
  m["version"] = version();
  m["command"] = command;
  m["config"] = config;
  m["wall_clock_seconds"] = wall_seconds;
  m["checks"] = checks;
  json files = json::array();
  for (const auto& f : files_)
    files.push_back({{"name", f.name}, {"rows", f.rows}, {"columns", f.columns}, {"sha256", f.sha256}});
  m["files"] = files;
  write_text(dir_ / "manifest.json", m.dump(2) + "\n");
}

CsvTable moments_table(const std::vector<Frame>& frames) {
  std::vector<std::string> cols{"t"};
  for (const char* p : {"mean_", "second_", "var_"})
    for (const char* a : kAxes) cols.push_back(std::string(p) + a);
  for (const char* p : {"cov_", "anticomm_"})
    for (const char* q : kPairs) cols.push_back(std::string(p) + q);
  CsvTable t(cols);
  for (const Frame& f : frames) {
    const MomentReport& m = f.moments;
    std::vector<double> row{f.t};
    for (const auto* arr : {&m.mean, &m.second, &m.var, &m.cov, &m.anticomm})
      row.insert(row.end(), arr->begin(), arr->end());
    t.add(row);
  }
  return t;
}

CsvTable criteria_table(const std::vector<Frame>& frames) {
  std::vector<std::string> cols{"t"};
  for (const char* c : kAxes) cols.push_back(std::string("R_") + c);
  // S_a_c is the squeezing parameter of J_a against the denominator R_c
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      if (a != c) cols.push_back(std::string("S_") + kAxes[a] + "_" + kAxes[c]);
  for (const char* p : {"E_sorensen_", "E_toth_", "snr_"})
    for (const char* a : kAxes) cols.push_back(std::string(p) + a);
  cols.insert(cols.end(), {"toth_sum_second", "toth_sum_var"});
  for (const char* p : {"toth_pair_second_", "toth_pair_var_"})
    for (const char* a : kAxes) cols.push_back(std::string(p) + a);
  cols.push_back("toth_bound");
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      if (a != c) cols.push_back(std::string("squeezed_") + kAxes[a] + "_" + kAxes[c]);
  for (const char* p : {"sorensen_violated_", "toth_violated_"})
    for (const char* a : kAxes) cols.push_back(std::string(p) + a);
  cols.push_back("toth_inequality_violated");

  CsvTable t(cols);
  for (const Frame& f : frames) {
    const CriteriaReport& c = f.criteria;
    std::vector<double> row{f.t};
    row.insert(row.end(), c.R.begin(), c.R.end());
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 3; ++k)
        if (a != k) row.push_back(c.S[a][k]);
    for (const auto* arr : {&c.sorensen, &c.toth_param, &c.snr}) row.insert(row.end(), arr->begin(), arr->end());
    row.push_back(c.toth_sum_second);
    row.push_back(c.toth_sum_var);
    row.insert(row.end(), c.toth_pair_second.begin(), c.toth_pair_second.end());
    row.insert(row.end(), c.toth_pair_var.begin(), c.toth_pair_var.end());
    row.push_back(c.toth_bound);
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 3; ++k)
        if (a != k) row.push_back(flag(c.squeezed(a, k)));
    for (int a = 0; a < 3; ++a) row.push_back(flag(c.sorensen_violated(a)));
    for (int a = 0; a < 3; ++a) row.push_back(flag(c.toth_violated(a)));
    row.push_back(flag(c.toth_inequality_violated()));
    t.add(row);
  }
  return t;
}

CsvTable entropies_table(const std::vector<Frame>& frames) {
  CsvTable t({"t", "E_H", "E_Q", "E_R", "I_H", "S_vn"});
  for (const Frame& f : frames) {
    if (!f.entropy) continue;
    const EntropyReport& e = *f.entropy;
    t.add({f.t, e.E_H, e.E_Q, e.E_R, e.I_H, e.S_vn});
  }
  return t;
}

CsvTable fidelity_table(const std::vector<Frame>& frames, bool with_route_deviation) {
  CsvTable t(with_route_deviation ? std::vector<std::string>{"t", "fidelity", "route_deviation"}
                                  : std::vector<std::string>{"t", "fidelity"});
  for (const Frame& f : frames) {
    if (with_route_deviation) t.add({f.t, f.fidelity, f.route_deviation});
    else t.add({f.t, f.fidelity});
  }
  return t;
}

CsvTable wigner_grid_table(const PhaseGrid& g) {
  CsvTable t({"mu", "nu", "theta_nu", "value"});
  const SpinSpace& s = g.space;
  for (int mu = -s.ell; mu <= s.ell; ++mu)
    for (int nu = -s.ell; nu <= s.ell; ++nu)
      t.add({double(mu), double(nu), 2.0 * std::numbers::pi * nu / s.dim, g.at(mu, nu).real()});
  return t;
}

CsvTable weyl_grid_table(const PhaseGrid& g) {
  CsvTable t({"eta", "xi", "re_value", "im_value"});
  const SpinSpace& s = g.space;
  for (int eta = -s.ell; eta <= s.ell; ++eta)
    for (int xi = -s.ell; xi <= s.ell; ++xi) {
      const cplx v = g.at(eta, xi);
      t.add({double(eta), double(xi), v.real(), v.imag()});
    }
  return t;
}

CsvTable sweep_summary_table(const std::vector<SweepRow>& rows) {
  CsvTable t({"gamma", "frames", "min_E_sorensen_z", "min_E_toth_z", "min_S_z_x",
              "sorensen_toth_agreement", "sorensen_squeezing_agreement", "sorensen_windows",
              "toth_windows", "squeezing_windows"});
  for (const auto& r : rows)
    t.add({r.gamma, double(r.result.frames.size()), r.min_sorensen_z, r.min_toth_z,
           r.min_squeezing_z_x, r.sorensen_toth_agreement, r.sorensen_squeezing_agreement,
           double(r.sorensen_windows.size()), double(r.toth_windows.size()),
           double(r.squeezing_windows.size())});
  return t;
}

CsvTable sweep_windows_table(const std::vector<SweepRow>& rows) {
  CsvTable t({"gamma", "criterion", "t_start", "t_end"});
  for (const auto& r : rows) {
    for (auto [name, ws] : {std::pair{"E_sorensen_z", &r.sorensen_windows},
                            {"E_toth_z", &r.toth_windows}, {"S_z_x", &r.squeezing_windows}})
      for (const Window& w : *ws)
        t.add_raw({format_number(r.gamma), name, format_number(w.start), format_number(w.end)});
  }
  return t;
}

std::string snapshot_name(const std::string& kind, double t) {
  return kind + "_t" + format_number(t) + ".csv";
}

std::vector<FileRecord> write_run(const RunConfig& cfg, const RunResult& result, OutputDir& out) {
  const OutputSet& o = cfg.outputs;
  const bool deviation = cfg.verify_route && cfg.route != Route::exact;
  if (o.moments) out.write("moments.csv", moments_table(result.frames));
  if (o.criteria) out.write("criteria.csv", criteria_table(result.frames));
  if (o.entropies) out.write("entropies.csv", entropies_table(result.frames));
  out.write("fidelity.csv", fidelity_table(result.frames, deviation));
  for (const Snapshot& s : result.snapshots) {
    if (o.wigner) out.write(snapshot_name("wigner", s.t), wigner_grid_table(s.wigner));
    if (o.husimi) out.write(snapshot_name("husimi", s.t), wigner_grid_table(s.husimi));
    if (o.weyl) out.write(snapshot_name("weyl", s.t), weyl_grid_table(s.weyl));
  }
  return out.files();
}

json config_to_json(const RunConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["model"] = to_string(c.model);
  j["n_spins"] = c.n_spins;
  j["j"] = 0.5 * c.n_spins;
  j["h"] = c.h;
  j["gamma"] = c.gamma;
  j["lambda"] = c.lambda;
  j["field_scale"] = c.field_scale;
  j["full_form"] = c.full_form;
  j["chi"] = c.chi;
  j["theta"] = c.initial.theta;
  j["phi"] = c.initial.phi;
  j["t0"] = c.t0;
  j["t1"] = c.t1;
  j["dt"] = c.dt;
  j["snapshots"] = c.snapshots;
  j["outputs"] = c.outputs.names();
  j["output_dir"] = c.output_dir;
  j["route"] = to_string(c.route);
  j["verify_route"] = c.verify_route;
  return j;
}

void apply_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    try {
      if (k == "preset") {
        const std::string name = v.get<std::string>();
        if (!name.empty()) {
          RunConfig p = preset(name);
          p.output_dir = c.output_dir;
          c = p;
        }
      } else if (k == "model") c.model = parse_model(v.get<std::string>());
      else if (k == "n_spins") c.n_spins = v.get<int>();
      else if (k == "j") {
        const double jj = v.get<double>();
        if (std::abs(2 * jj - std::round(2 * jj)) > 1e-12) throw ConfigError("j", "must be a multiple of 1/2");
        c.n_spins = static_cast<int>(std::lround(2 * jj));
      }
      else if (k == "h") c.h = v.get<double>();
      else if (k == "gamma") c.gamma = v.get<double>();
      else if (k == "lambda") c.lambda = v.get<double>();
      else if (k == "field_scale") c.field_scale = v.get<double>();
      else if (k == "full_form") c.full_form = v.get<bool>();
      else if (k == "chi") c.chi = v.get<double>();
      else if (k == "theta") c.initial.theta = v.get<double>();
      else if (k == "phi") c.initial.phi = v.get<double>();
      else if (k == "t0") c.t0 = v.get<double>();
      else if (k == "t1") c.t1 = v.get<double>();
      else if (k == "dt") c.dt = v.get<double>();
      else if (k == "snapshots") c.snapshots = v.get<std::vector<double>>();
      else if (k == "outputs") c.outputs = OutputSet::parse(v.get<std::vector<std::string>>());
      else if (k == "output_dir") c.output_dir = v.get<std::string>();
      else if (k == "route") c.route = parse_route(v.get<std::string>());
      else if (k == "verify_route") c.verify_route = v.get<bool>();
      else throw ConfigError(k, "unknown configuration key");
    } catch (const json::exception& e) {
      throw ConfigError(k, std::string("wrong type: ") + e.what());
    }
  }
}

json load_json_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw ConfigError("config", "cannot read " + p.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
}

std::string resolve_output_dir(const std::optional<std::string>& flag, const std::string& configured) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return configured;
}

}  // namespace phasec
