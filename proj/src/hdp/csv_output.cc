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

#include "hdp/csv_output.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hdp/config.h"
#include "hdp/hd_loss.h"
#include "hdp/status.h"

namespace hdp {
namespace {

const char* const kCoordNames[] = {"mu", "sigma"};

const char* CoordName(int j) { return j < 2 ? kCoordNames[j] : "theta"; }

std::string TableHeader() {
  return "epsilon,alpha,coord,mean,se,cov_corr,cov_uncorr,n_thresholded,"
         "n_failed\n";
}

std::string TableRows(const SimulationResult& result, std::size_t n,
                      bool thresholded) {
  std::string out;
  for (const CellSummary& s : result.cells) {
    if (s.n != n) continue;
    const Eigen::VectorXd& mean = thresholded ? s.mean : s.mean_all;
    const Eigen::VectorXd& se = thresholded ? s.se : s.se_all;
    for (int j = 0; j < mean.size(); ++j) {
      absl::StrAppend(&out, FormatNumber(s.epsilon), ",",
                      FormatNumber(s.alpha), ",", CoordName(j), ",",
                      FormatNumber(mean[j]), ",", FormatNumber(se[j]), ",",
                      FormatNumber(s.coverage_corrected[j]), ",",
                      FormatNumber(s.coverage_uncorrected[j]), ",",
                      thresholded ? s.n_thresholded : 0, ",", s.n_failed,
                      "\n");
    }
  }
  return out;
}

std::string Bool(bool b) { return b ? "1" : "0"; }

std::string TraceFileTag(const SimulationResult& result, std::size_t n,
                         double alpha, double epsilon) {
  std::string tag;
  if (result.sizes.size() > 1) absl::StrAppend(&tag, "_n", n);
  if (result.config.alpha_grid.size() > 1) {
    absl::StrAppend(&tag, "_alpha", FormatNumber(alpha));
  }
  absl::StrAppend(&tag, "_eps", FormatNumber(epsilon));
  return tag;
}

}  // namespace

std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.10g", x);
}

std::string TableCsv(const SimulationResult& result, std::size_t n) {
  return TableHeader() + TableRows(result, n, /*thresholded=*/true);
}

std::string UnthresholdedTableCsv(const SimulationResult& result,
                                  std::size_t n) {
  return TableHeader() + TableRows(result, n, /*thresholded=*/false);
}

std::string MleCsv(const SimulationResult& result, std::size_t n) {
  std::string out = "alpha,coord,mean,se,cov,n_failed\n";
  for (const MleSummary& s : result.mle) {
    if (s.n != n) continue;
    for (int j = 0; j < s.mean.size(); ++j) {
      absl::StrAppend(&out, FormatNumber(s.alpha), ",", CoordName(j), ",",
                      FormatNumber(s.mean[j]), ",", FormatNumber(s.se[j]), ",",
                      FormatNumber(s.coverage[j]), ",", s.n_failed, "\n");
    }
  }
  return out;
}

std::string ReplicationsCsv(const SimulationResult& result) {
  std::string out =
      "n,alpha,epsilon,rep,coord,estimate,reference,ci_lo,ci_hi,ci_lo_corr,"
      "ci_hi_corr,covered,covered_corr,kept,failed,eps_spent\n";
  const double nan = std::nan("");
  for (const ReplicationOutcome& o : result.replications) {
    for (int j = 0; j < 2; ++j) {
      const bool ok = !o.failed;
      absl::StrAppend(
          &out, o.n, ",", FormatNumber(o.alpha), ",", FormatNumber(o.epsilon),
          ",", o.rep, ",", CoordName(j), ",",
          FormatNumber(ok ? o.estimate[j] : nan), ",",
          FormatNumber(o.reference.size() > j ? o.reference[j] : nan), ",",
          FormatNumber(ok ? o.plain[j].lo : nan), ",",
          FormatNumber(ok ? o.plain[j].hi : nan), ",",
          FormatNumber(ok ? o.corrected[j].lo : nan), ",",
          FormatNumber(ok ? o.corrected[j].hi : nan), ",",
          ok ? Bool(o.covered[j]) : "", ",",
          ok ? Bool(o.covered_corrected[j]) : "", ",",
          Bool(ok && !o.dropped), ",", Bool(o.failed), ",",
          FormatNumber(ok ? o.epsilon_spent : nan), "\n");
    }
  }
  return out;
}

std::string CoverageVsNCsv(const SimulationResult& result) {
  std::string out =
      "n,epsilon,alpha,coord,cov_corr,cov_uncorr,cov_corr_kept,"
      "cov_uncorr_kept\n";
  for (const CellSummary& s : result.cells) {
    for (int j = 0; j < s.coverage_corrected.size(); ++j) {
      absl::StrAppend(&out, s.n, ",", FormatNumber(s.epsilon), ",",
                      FormatNumber(s.alpha), ",", CoordName(j), ",",
                      FormatNumber(s.coverage_corrected[j]), ",",
                      FormatNumber(s.coverage_uncorrected[j]), ",",
                      FormatNumber(s.coverage_corrected_kept[j]), ",",
                      FormatNumber(s.coverage_uncorrected_kept[j]), "\n");
    }
  }
  return out;
}

std::string TraceCsv(const std::vector<std::pair<int, IterateTrace>>& traces) {
  std::string out = "rep,iter,mu,sigma,loss,eps_spent\n";
  for (const auto& [rep, trace] : traces) {
    for (std::size_t k = 0; k < trace.thetas.size(); ++k) {
      const double loss = k < trace.losses.size()
                              ? McLossContext::ClampLoss(trace.losses[k])
                              : std::nan("");
      const double spent =
          k < trace.eps_spent.size() ? trace.eps_spent[k] : std::nan("");
      absl::StrAppend(&out, rep, ",", k, ",",
                      FormatNumber(trace.thetas[k][0]), ",",
                      FormatNumber(trace.thetas[k][1]), ",",
                      FormatNumber(loss), ",", FormatNumber(spent), "\n");
    }
  }
  return out;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return IoError(absl::StrFormat("cannot write '%s'", path));
  out << text;
  out.close();
  if (!out) return IoError(absl::StrFormat("error writing '%s'", path));
  return absl::OkStatus();
}

absl::StatusOr<WrittenFiles> WriteSimulationOutputs(
    const SimulationResult& result, const std::string& dir,
    bool write_replications) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return IoError(absl::StrFormat("cannot create directory '%s': %s", dir,
                                   ec.message()));
  }
  WrittenFiles files;
  const SimulationConfig& c = result.config;
  auto emit = [&](const std::string& suffix,
                  const std::string& text) -> absl::Status {
    const std::string path =
        (std::filesystem::path(dir) / (c.name + suffix)).string();
    HDP_RETURN_IF_ERROR(WriteTextFile(path, text));
    files.paths.push_back(path);
    return absl::OkStatus();
  };
  HDP_RETURN_IF_ERROR(emit(".csv", TableCsv(result, c.n)));
  HDP_RETURN_IF_ERROR(
      emit("_unthresholded.csv", UnthresholdedTableCsv(result, c.n)));
  HDP_RETURN_IF_ERROR(emit("_config.txt", FormatSimulationConfig(c)));
  if (c.include_mle) HDP_RETURN_IF_ERROR(emit("_mle.csv", MleCsv(result, c.n)));
  if (!c.n_grid.empty()) {
    HDP_RETURN_IF_ERROR(emit("_coverage_vs_n.csv", CoverageVsNCsv(result)));
  }
  if (write_replications) {
    HDP_RETURN_IF_ERROR(emit("_replications.csv", ReplicationsCsv(result)));
  }
  if (c.trace_reps > 0) {
    // Group traces by (n, alpha, epsilon) in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<int, IterateTrace>>> groups;
    for (const ReplicationOutcome& o : result.replications) {
      if (!o.trace.has_value()) continue;
      const std::string tag = TraceFileTag(result, o.n, o.alpha, o.epsilon);
      if (groups.find(tag) == groups.end()) order.push_back(tag);
      groups[tag].emplace_back(o.rep, *o.trace);
    }
    for (const std::string& tag : order) {
      HDP_RETURN_IF_ERROR(
          emit(absl::StrCat("_trace", tag, ".csv"), TraceCsv(groups[tag])));
    }
  }
  return files;
}

}  // namespace hdp
