#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fruitgrid/harness/config_file.hpp"
#include "fruitgrid/harness/report.hpp"
#include "fruitgrid/harness/runner.hpp"
#include "fruitgrid/harness/svg_plot.hpp"
#include "fruitgrid/nn/gradcheck.hpp"
#include "fruitgrid/transforms/transforms.hpp"

namespace fg = fruitgrid;

namespace {

std::vector<uint64_t> parse_seeds_arg(const std::string& arg) {
  std::vector<uint64_t> out;
  std::istringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

std::vector<fg::VariantId> parse_variants_arg(const std::string& arg) {
  if (arg.empty() || arg == "all") return fg::all_variants();
  std::vector<fg::VariantId> out;
  std::istringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(fg::variant_from_name(item));
  return out;
}

struct CliFlags {
  std::string variant, seeds_str, out, config, local_feature_rule;
  uint64_t seed = 0;
  int episodes = -1, parallel = -1;
  bool seed_set = false;
};

fg::Options flags_to_options(const CLI::App& cmd, const CliFlags& f) {
  fg::Options o;
  if (cmd.count("--variant")) o.variant = f.variant;
  if (cmd.count("--seed")) o.seed = f.seed;
  if (cmd.count("--seeds")) o.seeds = parse_seeds_arg(f.seeds_str);
  if (cmd.count("--episodes")) o.episodes = f.episodes;
  if (cmd.count("--out")) o.out = f.out;
  if (cmd.count("--parallel")) o.parallel = f.parallel;
  if (cmd.count("--local-feature-rule")) o.local_feature_rule = f.local_feature_rule;
  return o;
}

fg::Options load_merged_options(const CLI::App& cmd, const CliFlags& f) {
  fg::Options base;
  if (cmd.count("--config")) base = fg::parse_config_file(f.config);
  return fg::merge_options(base, flags_to_options(cmd, f));  // flags win
}

void add_common_flags(CLI::App* cmd, CliFlags& f) {
  cmd->add_option("--variant", f.variant, "variant name (sweep also accepts a comma list or 'all')");
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--seeds", f.seeds_str, "comma-separated seed list");
  cmd->add_option("--episodes", f.episodes, "training episodes");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--config", f.config, "key = value config file; flags override it");
  cmd->add_option("--parallel", f.parallel, "worker threads for sweeps");
  cmd->add_option("--local-feature-rule", f.local_feature_rule,
                  "two-network handoff rule: fruits | any");
}

int cmd_run(const CLI::App& cmd, const CliFlags& f) {
  const fg::Options opt = load_merged_options(cmd, f);
  fg::RunConfig rc;
  fg::apply_options(opt, rc.agent);
  if (opt.out) rc.out_dir = *opt.out;

  const fg::MetricsLog log = fg::run(rc);
  const auto returns = log.returns();
  const auto rm = fg::running_mean(returns);
  std::cout << "wrote " << fg::run_csv_path(rc.out_dir, rc.agent.variant, rc.agent.seed) << "\n"
            << "episodes " << log.rows.size() << ", final running-mean return "
            << (rm.empty() ? 0.0 : rm.back()) << "\n";
  return 0;
}

int cmd_sweep(const CLI::App& cmd, const CliFlags& f) {
  const fg::Options opt = load_merged_options(cmd, f);
  fg::SweepConfig sc;
  sc.variants = parse_variants_arg(opt.variant.value_or("all"));
  sc.seeds = opt.seeds.value_or(std::vector<uint64_t>{1, 2, 3, 4, 5});
  if (opt.seed) sc.seeds = {*opt.seed};
  fg::apply_options(opt, sc.base);
  if (opt.out) sc.out_dir = *opt.out;
  if (opt.parallel) sc.parallel = *opt.parallel;

  const fg::SweepResult res = fg::sweep(sc);
  std::cout << "sweep: " << res.runs_ok << " runs ok, " << res.runs_failed << " failed\n";
  for (const std::string& s : res.failures) std::cout << "  failure: " << s << "\n";
  if (res.runs_ok == 0) throw std::runtime_error("sweep produced no successful runs");
  std::cout << "summary: " << fg::summary_csv_path(sc.out_dir) << "\n";
  return 0;
}

int cmd_report(const CLI::App& cmd, const CliFlags& f) {
  const fg::Options opt = load_merged_options(cmd, f);
  const std::string out_dir = opt.out.value_or("out");
  const auto variants = parse_variants_arg(opt.variant.value_or("all"));
  const auto seeds = opt.seeds.value_or(std::vector<uint64_t>{1, 2, 3, 4, 5});

  const fg::ReportData data = fg::collect_report_data(out_dir, variants, seeds);
  const std::string text = fg::format_report(data);
  std::cout << text;
  const std::string path = out_dir + "/report.txt";
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
  std::cout << "\nwrote " << path << "\n";
  return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out_path, bool bars) {
  if (bars) {
    // expects summary CSVs: variant,final_running_mean,auc,stability,n_seeds
    std::vector<fg::BarItem> items;
    for (const std::string& in : inputs) {
      std::ifstream is(in);
      if (!is) throw std::runtime_error("cannot open " + in);
      std::string line;
      if (!std::getline(is, line) || line.rfind("variant,", 0) != 0)
        throw std::runtime_error("not a summary csv: " + in);
      while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string variant, field;
        std::getline(ls, variant, ',');
        std::getline(ls, field, ',');  // final
        std::getline(ls, field, ',');  // auc
        std::getline(ls, field, ',');  // stability
        items.push_back({variant, std::stod(field)});
      }
    }
    fg::write_bar_chart_svg(items, "end-of-training stability (mean rolling std)", "stability",
                            out_path);
  } else {
    std::vector<fg::CurveSeries> series;
    for (const std::string& in : inputs) {
      fg::CurveSeries s;
      s.label = std::filesystem::path(in).stem().string();
      std::ifstream is(in);
      if (!is) throw std::runtime_error("cannot open " + in);
      std::string header;
      if (!std::getline(is, header)) throw std::runtime_error("empty csv: " + in);
      if (header == "episode,return,steps,mean_loss,epsilon") {
        const fg::MetricsLog log = fg::read_metrics_csv(in);
        const auto rm = fg::running_mean(log.returns());
        for (size_t t = 0; t < rm.size(); ++t) {
          s.x.push_back(static_cast<double>(t + 1));
          s.y.push_back(rm[t]);
        }
      } else if (header.rfind("episode,mean_running_return", 0) == 0) {
        std::string line;
        while (std::getline(is, line)) {
          if (line.empty()) continue;
          std::istringstream ls(line);
          std::string ep, mean;
          std::getline(ls, ep, ',');
          std::getline(ls, mean, ',');
          s.x.push_back(std::stod(ep));
          s.y.push_back(std::stod(mean));
        }
      } else {
        throw std::runtime_error("unrecognized csv header in " + in);
      }
      series.push_back(std::move(s));
    }
    fg::write_line_chart_svg(series, "running mean return (window 50)", "episode",
                             "running mean return", out_path);
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  {  // environment determinism and episode bounds
    bool ok = true;
    fg::Rng rng(7);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const uint64_t seed = rng.next();
      fg::EnvState a = fg::env_reset(seed), b = fg::env_reset(seed);
      ok = a.agent == b.agent && a.fruits == b.fruits;
      double ret = 0.0;
      int steps = 0;
      while (!a.done()) {
        const auto r = fg::env_step(a, static_cast<fg::Action>(rng.uniform_int(4)));
        a = r.state;
        ret += r.reward;
        ++steps;
      }
      ok = ok && ret >= 0.0 && ret <= 5.0 && steps <= fg::kMaxEpisodeSteps;
    }
    check(ok, "environment determinism and bounds", "");
  }

  {  // transform identities
    bool ok = true;
    fg::Rng rng(11);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      fg::Tensor plane({11, 11});
      for (double& v : plane.data) v = rng.uniform();
      const int dr = rng.uniform_int(21) - 10, dc = rng.uniform_int(21) - 10;
      ok = fg::roll(fg::roll(plane, dr, dc), -dr, -dc) == plane;

      double ring = 0.0;
      for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j)
          if (i == 0 || i == 10 || j == 0 || j == 10) ring += plane(i, j);
      const fg::Tensor collapsed = fg::collapse_ring(plane, 0.9);
      ok = ok && std::abs(collapsed.sum() - (plane.sum() - 0.1 * ring)) < 1e-9;
    }
    check(ok, "transform identities (roll inverse, ring conservation)", "");
  }

  {  // gradient check on a small two-branch network
    fg::NetSpec spec;
    spec.main = {{2, 5, 5},
                 {fg::LayerSpec::conv(4, 3, fg::PadMode::Valid), fg::LayerSpec::relu(),
                  fg::LayerSpec::flatten()}};
    spec.trunk = {fg::LayerSpec::dense(8), fg::LayerSpec::relu(), fg::LayerSpec::dense(4)};
    fg::QNetwork net(spec, 123);
    fg::Tensor x({2, 5, 5});
    fg::Rng rng(5);
    for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
    const double err = fg::gradient_check(net, x, nullptr, rng, 30);
    check(err < 1e-4, "gradient check", "max rel err " + fg::format_real(err));
  }

  {  // replay sampling proportionality, coarse
    fg::PrioritizedBuffer<int> buf(2);
    buf.push(0);
    buf.push(1);
    fg::Rng rng(3);
    auto first = buf.sample(2, rng);  // clears the replay-once backlog
    buf.update_priorities(first.slots, first.seqs, {0.999, 2.999});  // p = 1 and 3
    int hits = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      auto b = buf.sample(1, rng);
      if (buf.priority(b.slots[0]) > 2.0) ++hits;
    }
    const double freq = static_cast<double>(hits) / draws;
    const double sigma = std::sqrt(0.75 * 0.25 / draws);
    check(std::abs(freq - 0.75) < 4 * sigma, "replay proportional sampling",
          "freq " + fg::format_real(freq));
  }

  {  // tiny run is deterministic
    const std::string dir =
        (std::filesystem::temp_directory_path() / "fruitgrid_selftest").string();
    fg::RunConfig rc;
    rc.agent.variant = fg::VariantId::Summary3x3;
    rc.agent.seed = 9;
    rc.agent.episodes = 3;
    rc.agent.buffer_global = 200;
    rc.agent.buffer_local = 200;
    rc.agent.batch_size = 16;
    rc.out_dir = dir;
    fg::run(rc);
    const std::string csv = fg::run_csv_path(dir, rc.agent.variant, rc.agent.seed);
    std::ifstream f1(csv, std::ios::binary);
    std::stringstream s1;
    s1 << f1.rdbuf();
    fg::run(rc);
    std::ifstream f2(csv, std::ios::binary);
    std::stringstream s2;
    s2 << f2.rdbuf();
    check(!s1.str().empty() && s1.str() == s2.str(), "smoke run determinism", csv);
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fruitgrid: agent-centered state views for DQN on the fruit gridworld"};
  app.require_subcommand(1);

  CliFlags run_f, sweep_f, report_f;
  CLI::App* run_cmd = app.add_subcommand("run", "train one variant with one seed");
  add_common_flags(run_cmd, run_f);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a variant x seed grid and aggregate");
  add_common_flags(sweep_cmd, sweep_f);
  CLI::App* report_cmd = app.add_subcommand("report", "comparison report from sweep output");
  add_common_flags(report_cmd, report_f);

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plot.svg";
  bool plot_bars = false;
  CLI::App* plot_cmd = app.add_subcommand("plot", "SVG chart from metrics/aggregate CSVs");
  plot_cmd->add_option("inputs", plot_inputs, "input CSV files")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path");
  plot_cmd->add_flag("--bars", plot_bars, "stability bar chart from summary CSVs");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (run_cmd->parsed()) return cmd_run(*run_cmd, run_f);
    if (sweep_cmd->parsed()) return cmd_sweep(*sweep_cmd, sweep_f);
    if (report_cmd->parsed()) return cmd_report(*report_cmd, report_f);
    if (plot_cmd->parsed()) return cmd_plot(plot_inputs, plot_out, plot_bars);
    if (selftest_cmd->parsed()) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
