// Copyright 2026 The HDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV renderings of simulation results. Numbers use %.10g; infinite budgets
// print as "inf" and undefined statistics as "nan". Coordinates are named
// "mu" and "sigma".

#ifndef HDP_CSV_OUTPUT_H_
#define HDP_CSV_OUTPUT_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hdp/experiments.h"
#include "hdp/optimize.h"

namespace hdp {

// epsilon,alpha,coord,mean,se,cov_corr,cov_uncorr,n_thresholded,n_failed for
// cells at sample size n. Mean and se use thresholded replications;
// coverage uses every non-failed replication.
std::string TableCsv(const SimulationResult& result, std::size_t n);
// Same schema over every non-failed replication; n_thresholded is 0.
std::string UnthresholdedTableCsv(const SimulationResult& result,
                                  std::size_t n);
// alpha,coord,mean,se,cov,n_failed.
std::string MleCsv(const SimulationResult& result, std::size_t n);
// One row per replication, budget and coordinate.
std::string ReplicationsCsv(const SimulationResult& result);
// n,epsilon,alpha,coord,cov_corr,cov_uncorr,cov_corr_kept,cov_uncorr_kept.
std::string CoverageVsNCsv(const SimulationResult& result);
// rep,iter,mu,sigma,loss,eps_spent. loss is clamped to [0, 4].
std::string TraceCsv(const std::vector<std::pair<int, IterateTrace>>& traces);

struct WrittenFiles {
  std::vector<std::string> paths;
};

// Writes <name>.csv, <name>_unthresholded.csv, <name>_config.txt and, when
// applicable, <name>_mle.csv, <name>_coverage_vs_n.csv,
// <name>_replications.csv and per-budget trace files into dir.
absl::StatusOr<WrittenFiles> WriteSimulationOutputs(
    const SimulationResult& result, const std::string& dir,
    bool write_replications);

absl::Status WriteTextFile(const std::string& path, const std::string& text);

std::string FormatNumber(double x);

}  // namespace hdp

#endif  // HDP_CSV_OUTPUT_H_
