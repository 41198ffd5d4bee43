#include "fruitgrid/harness/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace fruitgrid {

std::string run_csv_path(const std::string& out_dir, VariantId v, uint64_t seed) {
  return out_dir + "/runs/" + variant_name(v) + "_seed" + std::to_string(seed) + ".csv";
}

std::string aggregate_csv_path(const std::string& out_dir, VariantId v) {
  return out_dir + "/agg/" + variant_name(v) + ".csv";
}

std::string summary_csv_path(const std::string& out_dir) { return out_dir + "/summary.csv"; }

MetricsLog run(const RunConfig& cfg) {
  DqnAgent agent(cfg.agent);
  agent.prefill();

  MetricsLog log;
  log.rows.reserve(static_cast<size_t>(cfg.agent.episodes));
  for (int ep = 1; ep <= cfg.agent.episodes; ++ep) {
    const EpisodeRecord rec = agent.run_episode(ep, EpisodeMode::Train);
    log.rows.push_back(
        {ep, rec.ret, rec.steps, rec.mean_loss, epsilon_at(cfg.agent, ep)});
  }
  write_metrics_csv(log, run_csv_path(cfg.out_dir, cfg.agent.variant, cfg.agent.seed));
  return log;
}

VariantAggregate aggregate_variant(const std::string& out_dir, VariantId v,
                                   const std::vector<uint64_t>& seeds) {
  VariantAggregate agg;
  agg.variant = v;

  std::vector<std::vector<double>> curves;   // per seed running means
  std::vector<double> stabilities;
  for (uint64_t seed : seeds) {
    const std::string path = run_csv_path(out_dir, v, seed);
    if (!std::filesystem::exists(path)) continue;
    const MetricsLog log = read_metrics_csv(path);
    if (log.rows.empty()) continue;
    const std::vector<double> returns = log.returns();
    curves.push_back(running_mean(returns));
    if (returns.size() >= static_cast<size_t>(kConvergenceEpisode + kRunningWindow))
      stabilities.push_back(stability(returns));
    agg.seeds_used.push_back(seed);
  }
  if (curves.empty())
    throw std::runtime_error("no runs found for " + variant_name(v) + " under " + out_dir);
  const size_t episodes = curves.front().size();
  for (const auto& c : curves)
    if (c.size() != episodes)
      throw std::runtime_error("episode count mismatch across seeds for " + variant_name(v));

  agg.n_seeds = static_cast<int>(curves.size());
  agg.mean_running.resize(episodes);
  agg.std_running.resize(episodes);
  for (size_t t = 0; t < episodes; ++t) {
    double mean = 0.0;
    for (const auto& c : curves) mean += c[t];
    mean /= static_cast<double>(curves.size());
    double ss = 0.0;
    for (const auto& c : curves) ss += (c[t] - mean) * (c[t] - mean);
    agg.mean_running[t] = mean;
    agg.std_running[t] = curves.size() > 1
                             ? std::sqrt(ss / static_cast<double>(curves.size() - 1))
                             : 0.0;
  }
  agg.final_running_mean = agg.mean_running.back();
  for (double m : agg.mean_running) agg.auc += m;
  if (!stabilities.empty()) {
    for (double s : stabilities) agg.stability_mean += s;
    agg.stability_mean /= static_cast<double>(stabilities.size());
  } else {
    agg.stability_mean = std::nan("");  // run too short for the statistic
  }
  return agg;
}

void write_aggregate_csv(const VariantAggregate& agg, const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "episode,mean_running_return,std_running_return,n_seeds\n";
  for (size_t t = 0; t < agg.mean_running.size(); ++t)
    os << (t + 1) << ',' << format_real(agg.mean_running[t]) << ','
       << format_real(agg.std_running[t]) << ',' << agg.n_seeds << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_summary_csv(const std::vector<VariantAggregate>& aggs, const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "variant,final_running_mean,auc,stability,n_seeds\n";
  for (const VariantAggregate& a : aggs)
    os << variant_name(a.variant) << ',' << format_real(a.final_running_mean) << ','
       << format_real(a.auc) << ',' << format_real(a.stability_mean) << ',' << a.n_seeds << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

SweepResult sweep(const SweepConfig& cfg) {
  if (cfg.seeds.empty()) throw std::invalid_argument("sweep: empty seed list");
  const std::vector<VariantId> variants = cfg.variants.empty() ? all_variants() : cfg.variants;

  struct Job {
    VariantId variant;
    uint64_t seed;
  };
  std::vector<Job> jobs;
  for (VariantId v : variants)
    for (uint64_t s : cfg.seeds) jobs.push_back({v, s});

  SweepResult result;
  std::atomic<size_t> next{0};
  std::atomic<int> done{0};
  std::mutex mu;
  const auto t0 = std::chrono::steady_clock::now();

  int n_threads = cfg.parallel > 0 ? cfg.parallel
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<int>(n_threads, static_cast<int>(jobs.size()));

  auto worker = [&]() {
    while (true) {
      const size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      RunConfig rc;
      rc.agent = cfg.base;
      rc.agent.variant = job.variant;
      rc.agent.seed = job.seed;
      rc.out_dir = cfg.out_dir;
      try {
        run(rc);
        const int k = ++done;
        std::lock_guard<std::mutex> lock(mu);
        ++result.runs_ok;
        if (cfg.verbose) {
          const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
          std::cerr << "[sweep] " << variant_name(job.variant) << " seed " << job.seed
                    << " done (" << k << "/" << jobs.size() << ", " << secs << "s elapsed)\n";
        }
      } catch (const std::exception& e) {
        ++done;
        std::lock_guard<std::mutex> lock(mu);
        ++result.runs_failed;
        result.failures.push_back(variant_name(job.variant) + " seed " +
                                  std::to_string(job.seed) + ": " + e.what());
      }
    }
  };

  std::vector<std::thread> pool;
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<VariantAggregate> aggs;
  for (VariantId v : variants) {
    try {
      VariantAggregate agg = aggregate_variant(cfg.out_dir, v, cfg.seeds);
      write_aggregate_csv(agg, aggregate_csv_path(cfg.out_dir, v));
      aggs.push_back(std::move(agg));
    } catch (const std::exception& e) {
      result.failures.push_back(std::string("aggregate ") + variant_name(v) + ": " + e.what());
    }
  }
  if (!aggs.empty()) write_summary_csv(aggs, summary_csv_path(cfg.out_dir));
  return result;
}

}  // namespace fruitgrid
