#include "fracsource/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracsource/errors.hpp"

namespace fracsource {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("cannot parse ") + what + ": '" + token + "'");
  }
  if (used != token.size()) throw InputError(std::string("cannot parse ") + what + ": '" + token + "'");
  return v;
}

bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    line = trim(line);
    if (!line.empty()) return true;
  }
  return false;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_series_field(std::ostream& os, const SeriesField& field) {
  os << "N=" << field.N() << '\n';
  for (const ModeIndex idx : mode_indices(field.N())) {
    os << idx.k << ' ' << idx.n << ' ' << format_real(field.at(idx)) << '\n';
  }
}

SeriesField read_series_field(std::istream& is) {
  std::string line;
  bool have = next_data_line(is, line);
  while (have && line[0] == '#') have = next_data_line(is, line);
  if (!have || line.rfind("N=", 0) != 0) throw InputError("series field must start with N=<int>");
  int N = 0;
  try {
    std::size_t used = 0;
    N = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw InputError("bad N header");
  } catch (const std::logic_error&) {
    throw InputError("bad N header: '" + line + "'");
  }
  if (N < 0) throw InputError("N must be non-negative");
  SeriesField field = SeriesField::zeros(N);
  std::vector<bool> seen(static_cast<std::size_t>(2 * N + 1), false);
  while (next_data_line(is, line)) {
    if (line[0] == '#') continue;
    std::istringstream row(line);
    int k = 0, n = 0;
    std::string value;
    std::string extra;
    if (!(row >> k >> n >> value) || ((row >> extra) && extra[0] != '#')) {
      throw InputError("bad series record: '" + line + "'");
    }
    const ModeIndex idx{k, n};
    try {
      validate(idx);
    } catch (const IndexError&) {
      throw InputError("bad mode index in record: '" + line + "'");
    }
    if (n > N) throw InputError("mode index exceeds N: '" + line + "'");
    const std::size_t slot = n == 0 ? 0 : static_cast<std::size_t>(2 * n - 2 + k);
    if (seen[slot]) throw InputError("duplicate mode record: '" + line + "'");
    seen[slot] = true;
    field.at(idx) = parse_real(value, "coefficient");
  }
  for (const bool s : seen) {
    if (!s) throw InputError("series field is missing a mode record");
  }
  return field;
}

void write_solution_grid(std::ostream& os, const SolutionGrid& grid) {
  os << "# x t u\n";
  for (std::size_t j = 0; j < grid.t.size(); ++j) {
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
      os << format_real(grid.x[i]) << ' ' << format_real(grid.t[j]) << ' ' << format_real(grid.u[j][i]) << '\n';
    }
  }
}

void write_profile(std::ostream& os, const std::vector<double>& x, const std::vector<double>& values,
                   const std::string& column) {
  os << "# x " << column << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) os << format_real(x[i]) << ' ' << format_real(values[i]) << '\n';
}

MeasurementTable read_measurement_table(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw InputError("empty measurement file");
  {
    std::istringstream header(line);
    std::string hash, x, z, h, extra;
    if (!(header >> hash >> x >> z >> h) || hash != "#" || x != "x" || z != "z" || h != "h" || (header >> extra))
      throw InputError("measurement file must start with '# x z h'");
  }
  MeasurementTable t;
  while (next_data_line(is, line)) {
    if (line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b, c, extra;
    if (!(row >> a >> b >> c) || (row >> extra)) throw InputError("measurement row needs three values: '" + line + "'");
    t.x.push_back(parse_real(a, "x"));
    t.z.push_back(parse_real(b, "z"));
    t.h.push_back(parse_real(c, "h"));
  }
  validate_table(t);
  return t;
}

void write_measurement_table(std::ostream& os, const MeasurementTable& t) {
  os << "# x z h\n";
  for (std::size_t i = 0; i < t.x.size(); ++i)
    os << format_real(t.x[i]) << ' ' << format_real(t.z[i]) << ' ' << format_real(t.h[i]) << '\n';
}

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { entries_.emplace_back(key, format_real(value)); }
void Report::add(const std::string& key, long long value) { entries_.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { entries_.emplace_back(key, value ? "true" : "false"); }
void Report::comment(const std::string& text) { entries_.emplace_back(std::string(), text); }

void Report::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) {
    if (k.empty())
      os << "# " << v << '\n';
    else
      os << k << '=' << v << '\n';
  }
}

std::map<std::string, std::string> read_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + " has an empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace fracsource
