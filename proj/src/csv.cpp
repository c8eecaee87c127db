#include "eqnav/bench/csv.hpp"

#include <fstream>
#include <iomanip>

namespace eqnav::bench {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(std::make_unique<std::ofstream>(path)) {
  if (!*out_) throw std::runtime_error("csv: cannot open " + path);
  *out_ << std::setprecision(17);
  for (size_t i = 0; i < header.size(); ++i)
    *out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    *out_ << values[i] << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::string& line) { *out_ << line << "\n"; }

void write_truth_csv(const std::string& path, const SingleRun& run) {
  CsvWriter w(path, {"t",
                     "R00", "R01", "R02", "R10", "R11", "R12", "R20", "R21",
                     "R22", "vx", "vy", "vz", "px", "py", "pz", "bwx", "bwy",
                     "bwz", "bax", "bay", "baz"});
  for (size_t k = 0; k < run.t.size(); ++k) {
    const auto& xi = run.truth[k];
    std::vector<double> row = {run.t[k]};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) row.push_back(xi.T.R.R(r, c));
    for (int i = 0; i < 3; ++i) row.push_back(xi.T.v(i));
    for (int i = 0; i < 3; ++i) row.push_back(xi.T.p(i));
    for (int i = 0; i < 6; ++i) row.push_back(xi.b(i));
    w.row(row);
  }
}

void write_estimate_csv(const std::string& path, const SingleRun& run) {
  std::vector<std::string> header = {"t",
                                     "R00", "R01", "R02", "R10", "R11", "R12",
                                     "R20", "R21", "R22", "vx", "vy", "vz",
                                     "px", "py", "pz", "bwx", "bwy", "bwz",
                                     "bax", "bay", "baz"};
  const size_t m = run.sigma_diag.empty() ? 0 : run.sigma_diag[0].size();
  for (size_t i = 0; i < m; ++i) header.push_back("sigma" + std::to_string(i));
  CsvWriter w(path, header);
  for (size_t k = 0; k < run.t.size(); ++k) {
    const auto& xi = run.estimate[k];
    std::vector<double> row = {run.t[k]};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) row.push_back(xi.T.R.R(r, c));
    for (int i = 0; i < 3; ++i) row.push_back(xi.T.v(i));
    for (int i = 0; i < 3; ++i) row.push_back(xi.T.p(i));
    for (int i = 0; i < 6; ++i) row.push_back(xi.b(i));
    for (long i = 0; i < run.sigma_diag[k].size(); ++i)
      row.push_back(run.sigma_diag[k](i));
    w.row(row);
  }
}

void write_anees_csv(const std::string& path, const AneesSeries& s) {
  CsvWriter w(path, {"t", "value", "M_effective"});
  for (size_t k = 0; k < s.t.size(); ++k)
    w.row({s.t[k], s.value[k], static_cast<double>(s.effective_runs[k])});
}

void write_certify_csv(const std::string& path,
                       const std::vector<CertifyRow>& rows) {
  CsvWriter w(path, {"matrix", "max_dev", "tol", "pass"});
  for (const auto& r : rows) {
    std::ostringstream line;
    line << r.matrix << "," << std::setprecision(17) << r.max_dev << ","
         << r.tol << "," << (r.pass ? 1 : 0);
    w.raw_row(line.str());
  }
}

}  // namespace eqnav::bench
