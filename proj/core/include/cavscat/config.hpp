#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "cavscat/dressed.hpp"

namespace cavscat {

// invalid or inconsistent scenario input; the message always names the key
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& detail)
      : std::runtime_error("config key '" + key + "': " + detail), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// key = value pairs under [section] headers; '#' or ';' start a comment and
// parsed keys are addressed as section.name
class ConfigFile {
 public:
  static ConfigFile parse_string(const std::string& text);
  static ConfigFile parse_file(const std::string& path);  // IoError if unreadable

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer_or(const std::string& key, long fallback) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct ScanSettings {
  double half_width_MHz = 2.0;
  std::size_t points = 20001;
};

struct ChannelSettings {
  Sector sector = Sector::one_photon;
  int ell = 1;
  int t_label = 1;        // total channel label shared by the coupled pair
  double t1_scale = 1.0;  // coupling weight applied when t_label is 1
  double t2_scale = 0.707;
};

struct ScenarioConfig {
  ModelSpec model;
  RadialGrid grid;
  ScanSettings scan;
  ChannelSettings channels;
  std::string output_dir;  // empty means the working directory

  // everything the file provided, for the run manifest
  std::map<std::string, std::string> snapshot;

  double coupling_scale() const {
    return channels.t_label == 2 ? channels.t2_scale : channels.t1_scale;
  }
};

// built-in strong-coupling scenario, identical to an empty config file
ScenarioConfig default_scenario();

// applies the file on top of the defaults; unknown keys are rejected
ScenarioConfig load_scenario(const ConfigFile& file);

}  // namespace cavscat
