#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fruitgrid/agent/dqn_agent.hpp"

namespace fruitgrid {

// Options shared by the CLI and by `key = value` config files. Every field
// is optional; unset fields fall back to the built-in defaults.
struct Options {
  std::optional<std::string> variant;
  std::optional<uint64_t> seed;
  std::optional<std::vector<uint64_t>> seeds;
  std::optional<int> episodes;
  std::optional<std::string> out;
  std::optional<int> parallel;
  std::optional<double> gamma;
  std::optional<double> lr;
  std::optional<double> tau;
  std::optional<int> batch;
  std::optional<double> eps_start;
  std::optional<double> eps_end;
  std::optional<int> eps_end_episode;
  std::optional<int> buffer_global;
  std::optional<int> buffer_local;
  std::optional<double> summary_decay;
  std::optional<std::string> local_feature_rule;
};

// Parses `key = value` lines; blank lines and '#' comments are skipped.
// Unknown keys and malformed values are errors.
Options parse_config_file(const std::string& path);

// Fields set in `over` win.
Options merge_options(Options base, const Options& over);

// Applies the agent-level fields onto cfg; variant/seed/episodes included.
void apply_options(const Options& opt, AgentConfig& cfg);

}  // namespace fruitgrid
