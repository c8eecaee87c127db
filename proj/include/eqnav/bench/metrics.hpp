#pragma once

#include <vector>

#include "eqnav/lie/groups.hpp"

namespace eqnav::bench {

using lie::MatX;
using lie::VecX;

// ANEES(t) = (1/nM) sum_i eps_i^T Sigma_i^-1 eps_i per timestamp.
// Runs with singular covariance are excluded and counted.
struct AneesSeries {
  std::vector<double> t;
  std::vector<double> value;
  std::vector<int> effective_runs;
  int excluded = 0;
};

AneesSeries anees(const std::vector<double>& times,
                  const std::vector<std::vector<VecX>>& eps_per_run,
                  const std::vector<std::vector<MatX>>& cov_per_run);

// RMSE(t) over runs of scalar error series.
std::vector<double> rmse_series(const std::vector<std::vector<double>>& per_run);

// Mean over the first and second half of a series.
struct TransientAsymptotic {
  double transient = 0.0;
  double asymptotic = 0.0;
};
TransientAsymptotic split_mean(const std::vector<double>& series);

double mean(const std::vector<double>& v);

}  // namespace eqnav::bench
