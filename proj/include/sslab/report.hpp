#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sslab/config.hpp"

namespace sslab {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;  // file stem of the CSV payload
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

struct Gate {
  std::string name;
  double value = 0;
  std::string op;  // "<=", ">=", "in"
  double lo = 0, hi = 0;
  bool pass = false;
};

Gate gate_le(const std::string& name, double value, double bound);
Gate gate_ge(const std::string& name, double value, double bound);
Gate gate_in(const std::string& name, double value, double lo, double hi);

struct Envelope {
  std::string experiment;
  std::string config_echo;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Gate> gates;
  std::vector<Table> tables;
  double wall_seconds = 0;

  bool pass() const;
};

// Shortest representation that round-trips; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);
std::string to_csv(const Table& t);
nlohmann::json to_json(const Envelope& e);

// Writes report.json, config.ini and one CSV per table into dir.
void write_envelope(const Envelope& e, const std::string& dir);

}  // namespace sslab
