#include "qotto/sweep_table.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qotto {

void SweepTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("SweepTable: row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void SweepTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::size_t SweepTable::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("SweepTable: no column " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

const Cell& SweepTable::at(std::size_t row, const std::string& column) const {
  return rows_.at(row).at(column_index(column));
}

double SweepTable::number(std::size_t row, const std::string& column) const {
  return std::get<double>(at(row, column));
}

bool SweepTable::is_null(std::size_t row, const std::string& column) const {
  return std::holds_alternative<std::monostate>(at(row, column));
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string shortest(buf, res.ptr);
  res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  std::string full(buf, res.ptr);
  return shortest.size() <= full.size() ? shortest : full;
}

namespace {

std::string render(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return {};
}

Cell parse_field(const std::string& f) {
  if (f.empty()) return std::monostate{};
  double v = 0.0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec == std::errc{} && res.ptr == f.data() + f.size()) return v;
  return f;
}

}  // namespace

std::string SweepTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += render(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string SweepTable::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata_) j["metadata"][k] = v;
  j["columns"] = columns_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c))
        r.push_back(*d);
      else if (const auto* s = std::get_if<std::string>(&c))
        r.push_back(*s);
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(indent) + "\n";
}

SweepTable SweepTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto pos = l.find(',', start);
      f.push_back(l.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return f;
  };
  if (!std::getline(in, line)) throw std::invalid_argument("SweepTable::from_csv: empty input");
  SweepTable t(split(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (const auto& f : split(line)) row.push_back(parse_field(f));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace qotto
