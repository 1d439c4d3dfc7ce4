#include "cavscat/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace cavscat {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  const std::size_t pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) {
        throw ConfigError("line " + std::to_string(lineno),
                          "malformed section header '" + body + "'");
      }
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno),
                        "expected key = value, got '" + body + "'");
    }
    const std::string name = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (name.empty()) {
      throw ConfigError("line " + std::to_string(lineno), "empty key name");
    }
    const std::string key = section.empty() ? name : section + "." + name;
    out.values_[key] = value;
  }
  return out;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

double ConfigFile::number(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing required value");
  const char* begin = it->second.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError(key, "'" + it->second + "' is not a number");
  }
  return v;
}

double ConfigFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ConfigFile::integer_or(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const char* begin = it->second.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError(key, "'" + it->second + "' is not an integer");
  }
  return v;
}

std::string ConfigFile::text_or(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

ScenarioConfig default_scenario() {
  ScenarioConfig sc;
  sc.model = default_model();
  return sc;
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "cavity.g_A", "cavity.g_B", "cavity.delta1", "cavity.delta2",
      "atomic.a_hf", "atomic.mass",
      "atomic.c6_gg", "atomic.c6_eg", "atomic.c6_ee",
      "atomic.gamma_e", "atomic.lambda_nm",
      "atomic.rddi_x11", "atomic.rddi_x12", "atomic.rddi_x22",
      "atomic.quad_red", "atomic.quad_alpha", "atomic.quad_beta",
      "atomic.qc_pe2", "atomic.qd_pe2",
      "grid.r_min", "grid.r_max", "grid.step", "grid.wall_r_min",
      "scan.half_width_MHz", "scan.points",
      "channels.sector", "channels.ell", "channels.t_label",
      "channels.t1_scale", "channels.t2_scale",
      "output.dir",
  };
  return keys;
}

}  // namespace

ScenarioConfig load_scenario(const ConfigFile& file) {
  for (const auto& [key, value] : file.entries()) {
    (void)value;
    if (known_keys().count(key) == 0) throw ConfigError(key, "unknown key");
  }

  ScenarioConfig sc = default_scenario();
  ModelSpec& m = sc.model;

  m.cavity.g_A = file.number_or("cavity.g_A", m.cavity.g_A);
  m.cavity.g_B = file.number_or("cavity.g_B", 0.8 * m.cavity.g_A);
  m.cavity.delta1 = file.number_or("cavity.delta1", m.cavity.delta1);
  m.cavity.delta2 = file.number_or("cavity.delta2", m.cavity.delta2);

  m.hf.a_hf_MHz = file.number_or("atomic.a_hf", m.hf.a_hf_MHz);
  m.mass_amu = file.number_or("atomic.mass", m.mass_amu);
  if (m.mass_amu <= 0.0) throw ConfigError("atomic.mass", "must be positive");

  m.disp_gg.c6_hartree = file.number_or("atomic.c6_gg", m.disp_gg.c6_hartree);
  m.disp_eg.c6_hartree = file.number_or("atomic.c6_eg", m.disp_eg.c6_hartree);
  m.disp_ee.c6_hartree = file.number_or("atomic.c6_ee", m.disp_ee.c6_hartree);

  const double gamma_e = file.number_or("atomic.gamma_e", 0.182);
  const double lambda_nm = file.number_or("atomic.lambda_nm", 555.8);
  if (gamma_e <= 0.0) throw ConfigError("atomic.gamma_e", "must be positive");
  if (lambda_nm <= 0.0) throw ConfigError("atomic.lambda_nm", "must be positive");
  const double c3 = rddi_linewidth_scale(gamma_e, lambda_nm);
  m.rddi.c11 = file.number_or("atomic.rddi_x11", 1.3) * c3;
  m.rddi.c12 = file.number_or("atomic.rddi_x12", 0.3) * c3;
  m.rddi.c22 = file.number_or("atomic.rddi_x22", -0.2) * c3;

  const bool quad_touched = file.has("atomic.quad_red") || file.has("atomic.quad_alpha") ||
                            file.has("atomic.quad_beta") || file.has("atomic.qc_pe2") ||
                            file.has("atomic.qd_pe2");
  m.quad.reduced_element_au = file.number_or("atomic.quad_red", m.quad.reduced_element_au);
  m.quad.alpha = file.number_or("atomic.quad_alpha", m.quad.alpha);
  m.quad.beta = file.number_or("atomic.quad_beta", m.quad.beta);
  if (quad_touched) {
    const double pe = intercombination_moment(m.quad);
    m.qc_au = file.number_or("atomic.qc_pe2", -6.0) * pe * pe;
    m.qd_au = file.number_or("atomic.qd_pe2", 9.0) * pe * pe;
  }

  sc.grid.r_min = file.number_or("grid.r_min", sc.grid.r_min);
  sc.grid.r_max = file.number_or("grid.r_max", sc.grid.r_max);
  sc.grid.step = file.number_or("grid.step", sc.grid.step);
  if (sc.grid.step <= 0.0) throw ConfigError("grid.step", "must be positive");
  if (sc.grid.r_min <= 0.0) throw ConfigError("grid.r_min", "must be positive");
  if (sc.grid.r_max <= sc.grid.r_min + 10.0 * sc.grid.step) {
    throw ConfigError("grid.r_max", "grid must extend well past grid.r_min");
  }
  m.wall_r_min = file.number_or("grid.wall_r_min", sc.grid.r_min);

  sc.scan.half_width_MHz = file.number_or("scan.half_width_MHz", sc.scan.half_width_MHz);
  if (sc.scan.half_width_MHz <= 0.0) {
    throw ConfigError("scan.half_width_MHz", "must be positive");
  }
  const long pts = file.integer_or("scan.points", static_cast<long>(sc.scan.points));
  if (pts < 2) throw ConfigError("scan.points", "need at least two points");
  sc.scan.points = static_cast<std::size_t>(pts);

  const std::string sector = file.text_or("channels.sector", "one_photon");
  if (sector == "one_photon") {
    sc.channels.sector = Sector::one_photon;
  } else if (sector == "two_photon") {
    sc.channels.sector = Sector::two_photon;
  } else {
    throw ConfigError("channels.sector", "must be one_photon or two_photon");
  }
  const long ell = file.integer_or("channels.ell", sc.channels.ell);
  if (ell < 0) throw ConfigError("channels.ell", "must be non-negative");
  sc.channels.ell = static_cast<int>(ell);
  const long t_label = file.integer_or("channels.t_label", sc.channels.t_label);
  if (t_label != 1 && t_label != 2) throw ConfigError("channels.t_label", "must be 1 or 2");
  sc.channels.t_label = static_cast<int>(t_label);
  sc.channels.t1_scale = file.number_or("channels.t1_scale", sc.channels.t1_scale);
  sc.channels.t2_scale = file.number_or("channels.t2_scale", sc.channels.t2_scale);

  sc.output_dir = file.text_or("output.dir", "");
  sc.snapshot = file.entries();
  return sc;
}

}  // namespace cavscat
