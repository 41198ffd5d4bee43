#pragma once

#include <string>
#include <vector>

namespace fruitgrid {

inline constexpr int kRunningWindow = 50;
inline constexpr int kConvergenceEpisode = 500;

struct EpisodeRow {
  int episode = 0;
  double ret = 0.0;
  int steps = 0;
  double mean_loss = 0.0;
  double epsilon = 0.0;
};

struct MetricsLog {
  std::vector<EpisodeRow> rows;
  std::vector<double> returns() const;
};

// Growing-window mean: out[t] = mean(series[max(0, t-window+1) .. t]).
std::vector<double> running_mean(const std::vector<double>& series, int window = kRunningWindow);

// Sample standard deviation over the same windows as running_mean.
std::vector<double> rolling_std(const std::vector<double>& series, int window = kRunningWindow);

// End-of-training stability: mean of the 50-episode rolling std of returns
// from episode 500 to the end. Requires at least 550 episodes.
double stability(const std::vector<double>& returns);
double stability(const MetricsLog& log);

// 17 significant digits, enough to round-trip a double exactly
std::string format_real(double v);

// header: episode,return,steps,mean_loss,epsilon
void write_metrics_csv(const MetricsLog& log, const std::string& path);
MetricsLog read_metrics_csv(const std::string& path);

}  // namespace fruitgrid
