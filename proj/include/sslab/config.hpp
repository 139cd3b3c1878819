#pragma once

#include <map>
#include <string>
#include <vector>

namespace sslab {

/// Flat INI configuration: [grid], [fields], [potential], [function],
/// [experiment]. Every key has a registered default; unknown sections or keys
/// are rejected with a ConfigError naming them.
class Config {
public:
  Config();

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  // "section.key=value"
  void set(const std::string& assignment);
  void set(const std::string& section, const std::string& key, const std::string& value);

  bool has(const std::string& section, const std::string& key) const;  // non-empty value
  const std::string& raw(const std::string& section, const std::string& key) const;
  double num(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  bool flag(const std::string& section, const std::string& key) const;
  std::vector<double> list(const std::string& section, const std::string& key) const;
  std::vector<int> int_list(const std::string& section, const std::string& key) const;

  // Full effective configuration, defaults included, as INI text.
  std::string echo() const;
  const std::map<std::string, std::map<std::string, std::string>>& values() const { return values_; }

private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace sslab
