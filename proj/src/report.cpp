#include "lagbound/report.hpp"

#include <fstream>

#include "lagbound/errors.hpp"
#include "lagbound/numeric.hpp"

namespace lagbound {

std::string csv_escape(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string o = "\"";
  for (char c : v) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

CsvTable::CsvTable(std::vector<std::string> columns, std::string meta) : columns_(std::move(columns)), meta_(std::move(meta)) {}

CsvTable& CsvTable::cell(const std::string& v) {
  pending_.push_back(csv_escape(v));
  return *this;
}
CsvTable& CsvTable::cell(double v) { return cell(fmt_double(v)); }
CsvTable& CsvTable::cell(int v) { return cell(std::to_string(v)); }
CsvTable& CsvTable::cell(bool v) { return cell(std::string(v ? "true" : "false")); }

void CsvTable::end_row() {
  if (pending_.size() != columns_.size())
    throw InvalidInput("row has " + std::to_string(pending_.size()) + " cells, expected " + std::to_string(columns_.size()));
  rows_.push_back(std::move(pending_));
  pending_.clear();
}

std::string CsvTable::str() const {
  std::string o = "# schema=1";
  if (!meta_.empty()) o += "," + meta_;
  o += "\n";
  auto line = [&o](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) o += (i ? "," : "") + r[i];
    o += "\n";
  };
  std::vector<std::string> head;
  for (const auto& c : columns_) head.push_back(csv_escape(c));
  line(head);
  for (const auto& r : rows_) line(r);
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace lagbound
