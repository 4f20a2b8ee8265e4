#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fieldspec/signal.hpp"

namespace fieldspec {

// Numeric CSV table with a single header line. Values are written with 17
// significant digits so that a read-back reproduces them bit for bit;
// non-finite values are written as nan, inf and -inf.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws InvalidArgument
};

std::string format_double(double x);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Throws CsvError carrying the 1-based line number of the offending line.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

// Samples as `t,value_re,value_im`.
CsvTable to_table(const SampleSet& samples);
void write_samples(const std::filesystem::path& path, const SampleSet& samples);
SampleSet read_samples(std::istream& in);
SampleSet read_samples(const std::filesystem::path& path);

}  // namespace fieldspec
