#pragma once

#include <string>
#include <vector>

#include "fruitgrid/harness/runner.hpp"

namespace fruitgrid {

struct ReportData {
  std::vector<VariantAggregate> aggs;
  const VariantAggregate* find(VariantId v) const;
  // mean running-mean return at a 1-based episode; nan when unavailable
  double curve_at(VariantId v, int episode) const;
};

ReportData collect_report_data(const std::string& out_dir, const std::vector<VariantId>& variants,
                               const std::vector<uint64_t>& seeds);

// Human-readable comparison tables: per-variant summary, centering gaps,
// early-learning gaps, stability gaps per architecture, summary AUC order.
std::string format_report(const ReportData& data);

}  // namespace fruitgrid
