#include "fruitgrid/harness/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fruitgrid {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::runtime_error("config: bad integer for " + key + ": " + v);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::runtime_error("config: bad integer for " + key + ": " + v);
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::runtime_error("config: bad number for " + key + ": " + v);
  }
}

std::vector<uint64_t> parse_seed_list(const std::string& v, const std::string& key) {
  std::vector<uint64_t> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_u64(trim(item), key));
  if (out.empty()) throw std::runtime_error("config: empty seed list for " + key);
  return out;
}

}  // namespace

Options parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);

  Options opt;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty value for " + key);

    if (key == "variant") opt.variant = value;
    else if (key == "seed") opt.seed = parse_u64(value, key);
    else if (key == "seeds") opt.seeds = parse_seed_list(value, key);
    else if (key == "episodes") opt.episodes = parse_int(value, key);
    else if (key == "out") opt.out = value;
    else if (key == "parallel") opt.parallel = parse_int(value, key);
    else if (key == "gamma") opt.gamma = parse_double(value, key);
    else if (key == "lr") opt.lr = parse_double(value, key);
    else if (key == "tau") opt.tau = parse_double(value, key);
    else if (key == "batch") opt.batch = parse_int(value, key);
    else if (key == "eps_start") opt.eps_start = parse_double(value, key);
    else if (key == "eps_end") opt.eps_end = parse_double(value, key);
    else if (key == "eps_end_episode") opt.eps_end_episode = parse_int(value, key);
    else if (key == "buffer_global") opt.buffer_global = parse_int(value, key);
    else if (key == "buffer_local") opt.buffer_local = parse_int(value, key);
    else if (key == "summary_decay") opt.summary_decay = parse_double(value, key);
    else if (key == "local_feature_rule") opt.local_feature_rule = value;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
  return opt;
}

Options merge_options(Options base, const Options& over) {
  auto pick = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  pick(base.variant, over.variant);
  pick(base.seed, over.seed);
  pick(base.seeds, over.seeds);
  pick(base.episodes, over.episodes);
  pick(base.out, over.out);
  pick(base.parallel, over.parallel);
  pick(base.gamma, over.gamma);
  pick(base.lr, over.lr);
  pick(base.tau, over.tau);
  pick(base.batch, over.batch);
  pick(base.eps_start, over.eps_start);
  pick(base.eps_end, over.eps_end);
  pick(base.eps_end_episode, over.eps_end_episode);
  pick(base.buffer_global, over.buffer_global);
  pick(base.buffer_local, over.buffer_local);
  pick(base.summary_decay, over.summary_decay);
  pick(base.local_feature_rule, over.local_feature_rule);
  return base;
}

void apply_options(const Options& opt, AgentConfig& cfg) {
  if (opt.variant) cfg.variant = variant_from_name(*opt.variant);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.episodes) cfg.episodes = *opt.episodes;
  if (opt.gamma) cfg.gamma = *opt.gamma;
  if (opt.lr) cfg.lr = *opt.lr;
  if (opt.tau) cfg.tau = *opt.tau;
  if (opt.batch) cfg.batch_size = *opt.batch;
  if (opt.eps_start) cfg.eps_start = *opt.eps_start;
  if (opt.eps_end) cfg.eps_end = *opt.eps_end;
  if (opt.eps_end_episode) cfg.eps_end_episode = *opt.eps_end_episode;
  if (opt.buffer_global) cfg.buffer_global = *opt.buffer_global;
  if (opt.buffer_local) cfg.buffer_local = *opt.buffer_local;
  if (opt.summary_decay) cfg.summary_decay = *opt.summary_decay;
  if (opt.local_feature_rule) {
    if (*opt.local_feature_rule == "fruits") cfg.local_feature_rule = LocalFeatureRule::Fruits;
    else if (*opt.local_feature_rule == "any") cfg.local_feature_rule = LocalFeatureRule::Any;
    else throw std::runtime_error("local_feature_rule must be fruits or any");
  }
}

}  // namespace fruitgrid
