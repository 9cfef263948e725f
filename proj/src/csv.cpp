#include "cauchy/csv.hpp"

#include "cauchy/error.hpp"

#include <cmath>
#include <cstdio>

namespace cauchy
{

std::string format_double(double x)
{
  if (x == 0.0) return "0";  // folds -0 so output does not depend on summation sign noise
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field)
  {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size())
{
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << csv_escape(header[i]);
  out_ << '\n';
}

void CsvWriter::separator()
{
  if (in_row_ >= columns_) throw Error(ErrorCode::InvalidArgument, "CSV row has too many cells");
  if (in_row_ > 0) out_ << ',';
  ++in_row_;
}

CsvWriter& CsvWriter::cell(std::string_view text)
{
  separator();
  out_ << csv_escape(text);
  return *this;
}

CsvWriter& CsvWriter::cell(double x)
{
  separator();
  out_ << format_double(x);
  return *this;
}

CsvWriter& CsvWriter::cell(long long x)
{
  separator();
  out_ << x;
  return *this;
}

void CsvWriter::end_row()
{
  if (in_row_ != columns_) throw Error(ErrorCode::InvalidArgument, "CSV row has too few cells");
  out_ << '\n';
  in_row_ = 0;
}

}  // namespace cauchy
