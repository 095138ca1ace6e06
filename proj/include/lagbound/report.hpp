#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lagbound {

// CSV with a "# schema=1" header line, LF endings and %.17g numbers.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns, std::string meta = {});

  CsvTable& cell(const std::string& v);
  CsvTable& cell(const char* v) { return cell(std::string(v)); }
  CsvTable& cell(double v);
  CsvTable& cell(int v);
  CsvTable& cell(bool v);
  void end_row();

  std::string str() const;
  size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::string meta_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> pending_;
};

std::string csv_escape(const std::string& v);

// Creates parent directories; throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lagbound
