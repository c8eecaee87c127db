#include "eqnav/bench/metrics.hpp"

#include <Eigen/Cholesky>

namespace eqnav::bench {

AneesSeries anees(const std::vector<double>& times,
                  const std::vector<std::vector<VecX>>& eps_per_run,
                  const std::vector<std::vector<MatX>>& cov_per_run) {
  AneesSeries out;
  out.t = times;
  const size_t m = times.size();
  out.value.assign(m, 0.0);
  out.effective_runs.assign(m, 0);
  for (size_t k = 0; k < m; ++k) {
    double acc = 0.0;
    int eff = 0;
    for (size_t r = 0; r < eps_per_run.size(); ++r) {
      const VecX& e = eps_per_run[r][k];
      Eigen::LDLT<MatX> ldlt(cov_per_run[r][k]);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        ++out.excluded;
        continue;
      }
      acc += e.dot(ldlt.solve(e)) / static_cast<double>(e.size());
      ++eff;
    }
    out.value[k] = eff > 0 ? acc / eff : 0.0;
    out.effective_runs[k] = eff;
  }
  return out;
}

std::vector<double> rmse_series(const std::vector<std::vector<double>>& per_run) {
  if (per_run.empty()) return {};
  const size_t m = per_run[0].size();
  std::vector<double> out(m, 0.0);
  for (const auto& run : per_run)
    for (size_t k = 0; k < m; ++k) out[k] += run[k] * run[k];
  for (size_t k = 0; k < m; ++k)
    out[k] = std::sqrt(out[k] / static_cast<double>(per_run.size()));
  return out;
}

TransientAsymptotic split_mean(const std::vector<double>& series) {
  TransientAsymptotic out;
  const size_t half = series.size() / 2;
  if (series.empty()) return out;
  for (size_t k = 0; k < half; ++k) out.transient += series[k];
  for (size_t k = half; k < series.size(); ++k) out.asymptotic += series[k];
  out.transient /= std::max<size_t>(half, 1);
  out.asymptotic /= std::max<size_t>(series.size() - half, 1);
  return out;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace eqnav::bench
