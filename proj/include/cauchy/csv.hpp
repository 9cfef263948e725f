#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy
{

/// Shortest form that round-trips a double (17 significant digits, '.' separator).
std::string format_double(double x);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

/// Minimal RFC-4180 writer: one header row, then rows of pre-formatted cells.
class CsvWriter
{
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(unsigned long long x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(unsigned long x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(const char* text) { return cell(std::string_view(text)); }
  CsvWriter& cell(const std::string& text) { return cell(std::string_view(text)); }
  /// Terminates the current row.
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

}  // namespace cauchy
