#include "sslab/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "sslab/types.hpp"

namespace sslab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw LabError("cannot write " + p.string());
  out << text;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw LabError("table " + name + ": row width does not match the header");
  rows.push_back(std::move(row));
}

Gate gate_le(const std::string& name, double value, double bound) {
  return {name, value, "<=", -INFINITY, bound, value <= bound};
}

Gate gate_ge(const std::string& name, double value, double bound) {
  return {name, value, ">=", bound, INFINITY, value >= bound};
}

Gate gate_in(const std::string& name, double value, double lo, double hi) {
  return {name, value, "in", lo, hi, value >= lo && value <= hi};
}

bool Envelope::pass() const {
  for (const auto& g : gates)
    if (!g.pass) return false;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + csv_field(t.columns[c]);
  out += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + cell_text(row[c]);
    out += "\r\n";
  }
  return out;
}

nlohmann::json to_json(const Envelope& e) {
  nlohmann::json j;
  j["experiment"] = e.experiment;
  j["config"] = e.config_echo;
  j["results"] = e.results;
  auto gates = nlohmann::json::array();
  for (const auto& g : e.gates)
    gates.push_back({{"name", g.name}, {"value", number(g.value)}, {"op", g.op}, {"lo", number(g.lo)},
                     {"hi", number(g.hi)}, {"pass", g.pass}});
  j["gates"] = gates;
  auto tables = nlohmann::json::array();
  for (const auto& t : e.tables) tables.push_back({{"name", t.name}, {"file", t.name + ".csv"}, {"columns", t.columns}});
  j["payloads"] = tables;
  j["timings"] = {{"wall_seconds", e.wall_seconds}};
  j["pass"] = e.pass();
  return j;
}

void write_envelope(const Envelope& e, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw LabError("cannot create output directory " + dir + ": " + ec.message());
  write_file(fs::path(dir) / "report.json", to_json(e).dump(2) + "\n");
  write_file(fs::path(dir) / "config.ini", e.config_echo);
  for (const auto& t : e.tables) write_file(fs::path(dir) / (t.name + ".csv"), to_csv(t));
}

}  // namespace sslab
