#include "fieldspec/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fieldspec/error.hpp"

namespace fieldspec {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string s = trim(text);
  double x = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw CsvError(line, "cannot parse '" + s + "' as a number");
  }
  return x;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidArgument("no column named '" + name + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw InvalidArgument("row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  write_csv(out, table);
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (!have_header) {
      for (auto& f : fields) table.header.push_back(trim(f));
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw CsvError(line_no, "expected " + std::to_string(table.header.size()) +
                                  " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, line_no));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw CsvError(1, "missing header");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_csv(in);
}

CsvTable to_table(const SampleSet& samples) {
  CsvTable table{{"t", "value_re", "value_im"}, {}};
  for (std::size_t q = 0; q < samples.size(); ++q) {
    const auto v = samples.values()[q];
    table.rows.push_back({samples.positions()[q], v.real(), v.imag()});
  }
  return table;
}

void write_samples(const std::filesystem::path& path, const SampleSet& samples) {
  write_csv(path, to_table(samples));
}

SampleSet read_samples(std::istream& in) {
  const CsvTable table = read_csv(in);
  if (table.header != std::vector<std::string>{"t", "value_re", "value_im"}) {
    throw CsvError(1, "expected header t,value_re,value_im");
  }
  std::vector<double> t;
  std::vector<cdouble> v;
  for (const auto& row : table.rows) {
    t.push_back(row[0]);
    v.emplace_back(row[1], row[2]);
  }
  // Report range problems against the data line rather than as a bare
  // construction error.
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= 0.0 && t[i] < 1.0)) {
      throw CsvError(i + 2, "sample position outside [0, 1)");
    }
  }
  try {
    return SampleSet(std::move(t), std::move(v));
  } catch (const std::exception& e) {
    throw CsvError(1, e.what());
  }
}

SampleSet read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_samples(in);
}

}  // namespace fieldspec
