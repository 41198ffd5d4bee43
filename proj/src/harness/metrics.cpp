#include "fruitgrid/harness/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fruitgrid {

std::vector<double> MetricsLog::returns() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const EpisodeRow& r : rows) out.push_back(r.ret);
  return out;
}

std::vector<double> running_mean(const std::vector<double>& series, int window) {
  if (window < 1) throw std::invalid_argument("running_mean: window must be >= 1");
  if (series.empty()) throw std::invalid_argument("running_mean: empty series");
  std::vector<double> out(series.size());
  double acc = 0.0;
  for (size_t t = 0; t < series.size(); ++t) {
    acc += series[t];
    if (t >= static_cast<size_t>(window)) acc -= series[t - static_cast<size_t>(window)];
    const size_t n = std::min(t + 1, static_cast<size_t>(window));
    out[t] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<double> rolling_std(const std::vector<double>& series, int window) {
  if (window < 1) throw std::invalid_argument("rolling_std: window must be >= 1");
  if (series.empty()) throw std::invalid_argument("rolling_std: empty series");
  std::vector<double> out(series.size());
  for (size_t t = 0; t < series.size(); ++t) {
    const size_t lo = (t + 1 >= static_cast<size_t>(window)) ? t + 1 - static_cast<size_t>(window) : 0;
    const size_t n = t - lo + 1;
    if (n < 2) {
      out[t] = 0.0;
      continue;
    }
    double mean = 0.0;
    for (size_t i = lo; i <= t; ++i) mean += series[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (size_t i = lo; i <= t; ++i) ss += (series[i] - mean) * (series[i] - mean);
    out[t] = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return out;
}

double stability(const std::vector<double>& returns) {
  if (returns.size() < static_cast<size_t>(kConvergenceEpisode + kRunningWindow))
    throw std::invalid_argument("stability: needs at least 550 episodes");
  const std::vector<double> rs = rolling_std(returns);
  double acc = 0.0;
  size_t n = 0;
  for (size_t t = kConvergenceEpisode - 1; t < rs.size(); ++t, ++n) acc += rs[t];
  return acc / static_cast<double>(n);
}

double stability(const MetricsLog& log) { return stability(log.returns()); }

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_metrics_csv(const MetricsLog& log, const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::trunc | std::ios::binary);  // binary keeps LF endings
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "episode,return,steps,mean_loss,epsilon\n";
  for (const EpisodeRow& r : log.rows)
    os << r.episode << ',' << format_real(r.ret) << ',' << r.steps << ','
       << format_real(r.mean_loss) << ',' << format_real(r.epsilon) << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

MetricsLog read_metrics_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line) || line != "episode,return,steps,mean_loss,epsilon")
    throw std::runtime_error("bad metrics header in " + path);

  MetricsLog log;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    EpisodeRow r;
    char c1, c2, c3, c4;
    if (!(ls >> r.episode >> c1 >> r.ret >> c2 >> r.steps >> c3 >> r.mean_loss >> c4 >>
          r.epsilon) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw std::runtime_error("bad metrics row in " + path + ": " + line);
    log.rows.push_back(r);
  }
  return log;
}

}  // namespace fruitgrid
