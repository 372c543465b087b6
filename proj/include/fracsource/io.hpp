#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracsource/basis.hpp"
#include "fracsource/catalog.hpp"

namespace fracsource {

// 17 significant digits, locale independent.
std::string format_real(double v);

// Header "N=<int>", then one "k n value" record per mode in summation order.
void write_series_field(std::ostream& os, const SeriesField& field);
SeriesField read_series_field(std::istream& is);

struct SolutionGrid {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> u;  // u[j][i] = u(x[i], t[j])
};

// Header "# x t u", rows "x t value" grouped by t.
void write_solution_grid(std::ostream& os, const SolutionGrid& grid);
// Header "# x value".
void write_profile(std::ostream& os, const std::vector<double>& x, const std::vector<double>& values,
                   const std::string& column = "value");

// Header "# x z h", rows of three reals. Validated by validate_table().
MeasurementTable read_measurement_table(std::istream& is);
void write_measurement_table(std::ostream& os, const MeasurementTable& table);

// Ordered key=value report.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, bool value);
  void comment(const std::string& text);
  void write(std::ostream& os) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // empty key marks a comment line
};

// key=value lines; '#' starts a comment, surrounding whitespace is trimmed.
std::map<std::string, std::string> read_key_values(std::istream& is);

// Reads a whole file, throwing InputError if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace fracsource
