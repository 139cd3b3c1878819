#include "sslab/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sslab/types.hpp"

namespace sslab {

namespace {

struct KeyDefault {
  const char* section;
  const char* key;
  const char* value;
};

// empty default = unset
const KeyDefault kSchema[] = {
    {"grid", "lx", "6"},
    {"grid", "ly", "6"},
    {"grid", "nx", "31"},
    {"grid", "ny", "31"},
    {"fields", "b", "1"},
    {"fields", "eps", "0.5"},
    {"fields", "eps_list", ""},
    {"potential", "family", "zero"},
    {"potential", "amplitude", "0"},
    {"potential", "n", "2"},
    {"potential", "delta", "0.5"},
    {"potential", "width", "1"},
    {"potential", "clamp", "false"},
    {"function", "center", "2"},
    {"function", "halfwidth", "0.8"},
    {"function", "core", "0"},
    {"function", "scale", "1"},
    {"experiment", "threads", "0"},
    {"experiment", "dense_limit", "6400"},
    {"experiment", "levels", ""},
    {"experiment", "levels_ny", ""},
    {"experiment", "min_order", "1.5"},
    {"experiment", "max_rel_residual", "0.02"},
    {"experiment", "window_margin", "0.1"},
    {"experiment", "loc_margin", "0.1"},
    {"experiment", "degeneracy_tol", "1e-3"},
    {"experiment", "gap_margin", "0.3"},
    {"experiment", "support_margin", "0.2"},
    {"experiment", "slope_lo", ""},
    {"experiment", "slope_hi", ""},
    {"experiment", "min_r2", "0.9"},
    {"experiment", "radii", "1,1.5,2"},
    {"experiment", "s", "0.75"},
    {"experiment", "weight_delta", "0.5"},
    {"experiment", "deltas", "0.5,0.25,0.125"},
    {"experiment", "z_re", "2"},
    {"experiment", "z_im", "0.5"},
    {"experiment", "zp_re", "2"},
    {"experiment", "zp_im", "0.5"},
    {"experiment", "lambda", ""},
    {"experiment", "window_lo", ""},
    {"experiment", "window_hi", ""},
    {"experiment", "max_ratio", "2"},
    {"experiment", "plateau_max", "1.15"},
    {"experiment", "control_growth", "5"},
    {"experiment", "max_spread", "3"},
    {"experiment", "orders", "1,2,3"},
    {"experiment", "order", "2"},
    {"experiment", "max_residual", "1e-8"},
    {"experiment", "max_rel_change", "0.05"},
    {"experiment", "continuity_max", "0.2"},
    {"experiment", "a", "1.6"},
    {"experiment", "b", "2.4"},
    {"experiment", "mourre_tol", "0.02"},
    {"experiment", "level1_tol", "0.05"},
    {"experiment", "level2_tol", "0.15"},
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError(field, "expected a number, got '" + text + "'");
  return v;
}

Config parse(const boost::property_tree::ptree& pt) {
  Config c;
  for (const auto& [section, body] : pt) {
    if (body.empty() && !body.data().empty())
      throw ConfigError(section, "key outside of a section");
    for (const auto& [key, node] : body) c.set(section, key, node.data());
  }
  return c;
}

}  // namespace

Config::Config() {
  for (const auto& d : kSchema) values_[d.section][d.key] = d.value;
}

Config Config::from_file(const std::string& path) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::read_ini(path, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  return parse(pt);
}

Config Config::from_string(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  return parse(pt);
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  auto s = values_.find(section);
  if (s == values_.end()) throw ConfigError(section, "unknown section");
  auto k = s->second.find(key);
  if (k == s->second.end()) throw ConfigError(section + "." + key, "unknown key");
  k->second = trim(value);
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("--set", "expected section.key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)), assignment.substr(eq + 1));
}

bool Config::has(const std::string& section, const std::string& key) const { return !raw(section, key).empty(); }

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end()) throw ConfigError(section, "unknown section");
  const auto k = s->second.find(key);
  if (k == s->second.end()) throw ConfigError(section + "." + key, "unknown key");
  return k->second;
}

double Config::num(const std::string& section, const std::string& key) const {
  const std::string field = section + "." + key;
  if (!has(section, key)) throw ConfigError(field, "required value is missing");
  return parse_double(field, raw(section, key));
}

int Config::integer(const std::string& section, const std::string& key) const {
  const double v = num(section, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(section + "." + key, "expected an integer");
  return static_cast<int>(v);
}

bool Config::flag(const std::string& section, const std::string& key) const {
  const std::string& v = raw(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no" || v.empty()) return false;
  throw ConfigError(section + "." + key, "expected true or false, got '" + v + "'");
}

std::vector<double> Config::list(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(raw(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double(section + "." + key, item));
  }
  return out;
}

std::vector<int> Config::int_list(const std::string& section, const std::string& key) const {
  std::vector<int> out;
  for (double v : list(section, key)) {
    if (v != std::floor(v)) throw ConfigError(section + "." + key, "expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string Config::echo() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [section, keys] : values_) {
    if (!first) out << "\n";
    first = false;
    out << "[" << section << "]\n";
    for (const auto& [key, value] : keys) out << key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace sslab
