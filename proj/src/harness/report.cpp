#include "fruitgrid/harness/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace fruitgrid {

const VariantAggregate* ReportData::find(VariantId v) const {
  for (const VariantAggregate& a : aggs)
    if (a.variant == v) return &a;
  return nullptr;
}

double ReportData::curve_at(VariantId v, int episode) const {
  const VariantAggregate* a = find(v);
  if (!a || episode < 1 || episode > static_cast<int>(a->mean_running.size()))
    return std::nan("");
  return a->mean_running[static_cast<size_t>(episode - 1)];
}

ReportData collect_report_data(const std::string& out_dir, const std::vector<VariantId>& variants,
                               const std::vector<uint64_t>& seeds) {
  ReportData data;
  for (VariantId v : variants) data.aggs.push_back(aggregate_variant(out_dir, v, seeds));
  return data;
}

namespace {

struct Family {
  const char* label;
  VariantId nocenter, pad, roll;
};

constexpr Family kFamilies[] = {
    {"global", VariantId::GlobalNoCenter, VariantId::GlobalCenterPad, VariantId::GlobalCenterRoll},
    {"globallocal", VariantId::GlobalLocalNoCenter, VariantId::GlobalLocalCenterPad,
     VariantId::GlobalLocalCenterRoll},
    {"integrated", VariantId::IntegratedNoCenter, VariantId::IntegratedCenterPad,
     VariantId::IntegratedCenterRoll},
};

}  // namespace

std::string format_report(const ReportData& data) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);

  os << "== per-variant summary (mean over seeds) ==\n";
  os << std::left << std::setw(26) << "variant" << std::right << std::setw(12) << "final_rm"
     << std::setw(12) << "auc" << std::setw(12) << "stability" << std::setw(9) << "seeds"
     << "\n";
  for (const VariantAggregate& a : data.aggs)
    os << std::left << std::setw(26) << variant_name(a.variant) << std::right << std::setw(12)
       << a.final_running_mean << std::setw(12) << a.auc << std::setw(12) << a.stability_mean
       << std::setw(9) << a.n_seeds << "\n";

  os << "\n== centering advantage, running mean at episode 300 (global architecture) ==\n";
  const double g300 = data.curve_at(VariantId::GlobalNoCenter, 300);
  for (VariantId v : {VariantId::GlobalCenterPad, VariantId::GlobalCenterRoll}) {
    const double c300 = data.curve_at(v, 300);
    os << variant_name(v) << " " << c300 << " vs global_nocenter " << g300 << "  (gap "
       << (c300 - g300) << ")\n";
  }

  os << "\n== early learning, running mean at episode 100 ==\n";
  const double gl100 = data.curve_at(VariantId::GlobalLocalCenterPad, 100);
  const double g100 = data.curve_at(VariantId::GlobalNoCenter, 100);
  os << "globallocal_centerpad " << gl100 << " vs global_nocenter " << g100 << "  (gap "
     << (gl100 - g100) << ")\n";

  os << "\n== stability after episode 500 (lower is steadier) ==\n";
  for (const Family& f : kFamilies) {
    const VariantAggregate* n = data.find(f.nocenter);
    const VariantAggregate* p = data.find(f.pad);
    const VariantAggregate* r = data.find(f.roll);
    if (!n || !p || !r) continue;
    const double gap = n->stability_mean - 0.5 * (p->stability_mean + r->stability_mean);
    os << f.label << ": nocenter " << n->stability_mean << ", centerpad " << p->stability_mean
       << ", centerroll " << r->stability_mean << "  (centering gap " << gap << ")\n";
  }

  const VariantAggregate* s3 = data.find(VariantId::Summary3x3);
  const VariantAggregate* s5 = data.find(VariantId::Summary5x5);
  if (s3 && s5) {
    os << "\n== summary views, learning-curve AUC ==\n";
    os << "summary5x5 " << s5->auc << " vs summary3x3 " << s3->auc << "  (gap "
       << (s5->auc - s3->auc) << ")\n";
  }
  return os.str();
}

}  // namespace fruitgrid
