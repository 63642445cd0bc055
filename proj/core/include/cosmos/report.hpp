#pragma once

#include <string>
#include <vector>

#include "cosmos/metrics.hpp"

namespace cosmos::metrics {

// One aggregate row: a method scored for one class ("VS", "cochlea") or the
// cross-class "mean". Standard deviations are population, as the column
// names say.
struct ReportRow {
  std::string method;
  std::string cls;
  double dice_mean = 0.0;
  double dice_std = 0.0;
  double assd_mean = 0.0;
  double assd_std = 0.0;
  int n_cases = 0;
};

struct StudyReport {
  std::vector<ReportRow> rows;

  const ReportRow* find(const std::string& method, const std::string& cls) const;
};

// Aggregates per-case scores into three rows (VS, cochlea, mean) for one
// method. The mean row averages the two per-case class values case by case,
// so its dice_mean is exactly (VS mean + cochlea mean) / 2.
std::vector<ReportRow> aggregate_scores(const std::string& method,
                                        const std::vector<CaseScore>& scores);

void write_report_csv(const StudyReport& report, const std::string& path);
StudyReport read_report_csv(const std::string& path);

// Scatter of (dice_mean, assd_mean) per method, "mean" class rows.
void write_scatter_svg(const StudyReport& report, const std::string& path);

// Per-class Dice trend over an ordered list of methods (e.g. self-training
// iterations). One polyline + one circle per point per class.
void write_trend_svg(const StudyReport& report, const std::vector<std::string>& methods_in_order,
                     const std::string& path);

}  // namespace cosmos::metrics
