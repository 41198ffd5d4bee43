#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fruitgrid/agent/observation.hpp"
#include "fruitgrid/agent/variant.hpp"
#include "fruitgrid/replay/prioritized_buffer.hpp"

namespace fruitgrid {

enum class LocalFeatureRule { Fruits, Any };

struct AgentConfig {
  VariantId variant = VariantId::GlobalNoCenter;
  uint64_t seed = 1;
  double gamma = 0.95;
  double lr = 2e-4;
  double tau = 5e-4;
  int batch_size = 32;
  int episodes = 800;
  double eps_start = 1.0;
  double eps_end = 0.05;
  int eps_end_episode = 750;
  int buffer_global = 10000;
  int buffer_local = 2400;
  double summary_decay = 0.9;
  LocalFeatureRule local_feature_rule = LocalFeatureRule::Fruits;
};

// Linear decay from eps_start at episode 1 to eps_end at eps_end_episode,
// flat afterwards.
double epsilon_at(const AgentConfig& cfg, int episode);

struct Transition {
  NetInput obs;
  NetInput next_obs;
  int action = 0;
  double reward = 0.0;
  bool done = false;
};

enum class EpisodeMode { Prefill, Train, Eval };

struct EpisodeRecord {
  double ret = 0.0;
  int steps = 0;
  double mean_loss = 0.0;
};

struct StepDiag {
  double loss = 0.0;         // mean weighted loss, averaged over networks
  double mean_abs_td = 0.0;  // averaged over networks
};

// One DQN agent: per-variant observation pipeline, one or two online/target
// network pairs, one prioritized buffer per network, and independent rng
// streams for the environment, exploration, and replay sampling, all derived
// from one master seed.
class DqnAgent {
 public:
  explicit DqnAgent(AgentConfig cfg);

  const AgentConfig& config() const { return cfg_; }
  int num_networks() const { return static_cast<int>(online_.size()); }
  QNetwork& online_net(int i) { return *online_[static_cast<size_t>(i)]; }
  QNetwork& target_net(int i) { return *target_[static_cast<size_t>(i)]; }
  PrioritizedBuffer<Transition>& buffer(int i) { return *buffers_[static_cast<size_t>(i)]; }
  int episodes_trained() const { return episodes_trained_; }

  ObservationBundle observe(const EnvState& s) const;
  Action greedy_action(const ObservationBundle& obs);
  Action select_action(const ObservationBundle& obs, double eps);

  // Samples, trains, soft-updates the target and writes back priorities for
  // every network. Requires each buffer to hold at least one batch.
  StepDiag train_step();

  // Random-policy episodes until every buffer is at capacity.
  void prefill();
  bool buffers_full() const;

  EpisodeRecord run_episode(int episode_index, EpisodeMode mode);

  // prefix.netK.ckpt per network plus a prefix.meta text sidecar
  void save(const std::string& prefix) const;
  void load(const std::string& prefix);

 private:
  NetInput net_input(int net_index, const ObservationBundle& obs) const {
    return to_net_input(cfg_.variant, net_index, obs);
  }
  bool local_feature_present(const ObservationBundle& obs) const;

  AgentConfig cfg_;
  VariantTraits traits_;
  std::vector<std::unique_ptr<QNetwork>> online_, target_;
  std::vector<std::unique_ptr<PrioritizedBuffer<Transition>>> buffers_;
  Rng env_rng_, explore_rng_;
  std::vector<Rng> replay_rng_;
  int episodes_trained_ = 0;
};

}  // namespace fruitgrid
