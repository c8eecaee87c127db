#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "eqnav/bench/runner.hpp"

namespace eqnav::bench {

// Minimal CSV writer: mandatory header, '.' decimal point, 17 digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  std::unique_ptr<std::ofstream> out_;
};

void write_truth_csv(const std::string& path, const SingleRun& run);
void write_estimate_csv(const std::string& path, const SingleRun& run);
void write_anees_csv(const std::string& path, const AneesSeries& s);
void write_certify_csv(const std::string& path,
                       const std::vector<CertifyRow>& rows);

}  // namespace eqnav::bench
