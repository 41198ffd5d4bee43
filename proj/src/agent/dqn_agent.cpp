#include "fruitgrid/agent/dqn_agent.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fruitgrid {

namespace {

// rng stream tags; fixed so stream layouts never shift between runs
constexpr uint64_t kEnvStream = 1;
constexpr uint64_t kExploreStream = 2;
constexpr uint64_t kReplayStreamBase = 8;
constexpr uint64_t kNetInitStreamBase = 16;

int argmax_q(const std::array<double, kNumQValues>& q) {
  int best = 0;
  for (int a = 1; a < kNumQValues; ++a)
    if (q[static_cast<size_t>(a)] > q[static_cast<size_t>(best)]) best = a;  // ties keep the lowest index
  return best;
}

}  // namespace

double epsilon_at(const AgentConfig& cfg, int episode) {
  if (episode < 1) throw std::invalid_argument("epsilon_at: episodes are 1-based");
  if (episode >= cfg.eps_end_episode || cfg.eps_end_episode <= 1) return cfg.eps_end;
  const double frac = static_cast<double>(episode - 1) / static_cast<double>(cfg.eps_end_episode - 1);
  return cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;
}

DqnAgent::DqnAgent(AgentConfig cfg)
    : cfg_(cfg),
      traits_(variant_traits(cfg.variant)),
      env_rng_(derive_stream(cfg.seed, kEnvStream)),
      explore_rng_(derive_stream(cfg.seed, kExploreStream)) {
  const int n_nets = variant_num_networks(cfg_.variant);
  for (int i = 0; i < n_nets; ++i) {
    NetSpec spec = variant_net_spec(cfg_.variant, i);
    auto online = std::make_unique<QNetwork>(spec, derive_stream(cfg_.seed, kNetInitStreamBase + static_cast<uint64_t>(i)).next());
    auto target = std::make_unique<QNetwork>(spec, 0);
    target->copy_params_from(*online);

    const int64_t expected = variant_expected_params(cfg_.variant, i);
    if (online->num_params() != expected) {
      std::ostringstream os;
      os << "network " << i << " of " << variant_name(cfg_.variant) << " has "
         << online->num_params() << " parameters, expected " << expected;
      throw std::logic_error(os.str());
    }

    online_.push_back(std::move(online));
    target_.push_back(std::move(target));
    buffers_.push_back(std::make_unique<PrioritizedBuffer<Transition>>(
        variant_buffer_capacity(cfg_.variant, i, cfg_.buffer_global, cfg_.buffer_local)));
    replay_rng_.push_back(derive_stream(cfg_.seed, kReplayStreamBase + static_cast<uint64_t>(i)));
  }
}

ObservationBundle DqnAgent::observe(const EnvState& s) const {
  return build_observation(cfg_.variant, env_observe(s), s.agent, cfg_.summary_decay);
}

bool DqnAgent::local_feature_present(const ObservationBundle& obs) const {
  const int channels = (cfg_.local_feature_rule == LocalFeatureRule::Any) ? 2 : 1;
  for (int ch = 0; ch < channels; ++ch)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (obs.local(ch, r, c) != 0.0) return true;
  return false;
}

Action DqnAgent::greedy_action(const ObservationBundle& obs) {
  int net_index = 0;
  if (traits_.two_networks && local_feature_present(obs)) net_index = 1;
  const NetInput in = net_input(net_index, obs);
  const auto q = online_[static_cast<size_t>(net_index)]->forward(in.main, in.side.empty() ? nullptr : &in.side);
  return static_cast<Action>(argmax_q(q));
}

Action DqnAgent::select_action(const ObservationBundle& obs, double eps) {
  if (explore_rng_.uniform() < eps) return static_cast<Action>(explore_rng_.uniform_int(kNumActions));
  return greedy_action(obs);
}

StepDiag DqnAgent::train_step() {
  StepDiag diag;
  const AdamConfig adam{cfg_.lr, 0.9, 0.999, 1e-8};

  for (int i = 0; i < num_networks(); ++i) {
    QNetwork& online = *online_[static_cast<size_t>(i)];
    QNetwork& target = *target_[static_cast<size_t>(i)];
    PrioritizedBuffer<Transition>& buf = *buffers_[static_cast<size_t>(i)];
    if (buf.size() < cfg_.batch_size)
      throw std::logic_error("train_step: buffer holds fewer transitions than one batch");

    auto batch = buf.sample(cfg_.batch_size, replay_rng_[static_cast<size_t>(i)]);

    std::vector<BatchItem> items(batch.items.size());
    for (size_t s = 0; s < batch.items.size(); ++s) {
      const Transition& tr = *batch.items[s];
      double y = tr.reward;
      if (!tr.done) {
        const auto qn = target.forward(tr.next_obs.main,
                                       tr.next_obs.side.empty() ? nullptr : &tr.next_obs.side);
        y += cfg_.gamma * *std::max_element(qn.begin(), qn.end());
      }
      items[s] = {&tr.obs.main, tr.obs.side.empty() ? nullptr : &tr.obs.side, tr.action, y,
                  batch.weights[s]};
    }

    std::vector<double> tds;
    const double loss = train_on_batch(online, items, adam, &tds);
    polyak_update(target.params(), static_cast<const QNetwork&>(online).params(), cfg_.tau);
    buf.update_priorities(batch.slots, batch.seqs, tds);

    double abs_td = 0.0;
    for (double d : tds) abs_td += std::abs(d);
    diag.loss += loss;
    diag.mean_abs_td += abs_td / static_cast<double>(tds.size());
  }
  diag.loss /= num_networks();
  diag.mean_abs_td /= num_networks();
  return diag;
}

bool DqnAgent::buffers_full() const {
  for (const auto& b : buffers_)
    if (!b->full()) return false;
  return true;
}

void DqnAgent::prefill() {
  while (!buffers_full()) run_episode(0, EpisodeMode::Prefill);
}

EpisodeRecord DqnAgent::run_episode(int episode_index, EpisodeMode mode) {
  EnvState state = env_reset(env_rng_.next());
  ObservationBundle obs = observe(state);

  EpisodeRecord rec;
  double loss_sum = 0.0;
  while (!state.done()) {
    Action action;
    switch (mode) {
      case EpisodeMode::Prefill:
        action = static_cast<Action>(explore_rng_.uniform_int(kNumActions));
        break;
      case EpisodeMode::Train:
        action = select_action(obs, epsilon_at(cfg_, episode_index));
        break;
      case EpisodeMode::Eval:
        action = select_action(obs, cfg_.eps_end);
        break;
    }

    const StepResult res = env_step(state, action);
    ObservationBundle next_obs = observe(res.state);

    if (mode != EpisodeMode::Eval) {
      for (int i = 0; i < num_networks(); ++i)
        buffers_[static_cast<size_t>(i)]->push(Transition{
            net_input(i, obs), net_input(i, next_obs), static_cast<int>(action), res.reward,
            res.done});
    }
    if (mode == EpisodeMode::Train) loss_sum += train_step().loss;

    rec.ret += res.reward;
    rec.steps += 1;
    state = res.state;
    obs = std::move(next_obs);
  }
  if (mode == EpisodeMode::Train) {
    rec.mean_loss = rec.steps > 0 ? loss_sum / rec.steps : 0.0;
    episodes_trained_ += 1;
  }
  return rec;
}

void DqnAgent::save(const std::string& prefix) const {
  for (int i = 0; i < num_networks(); ++i)
    online_[static_cast<size_t>(i)]->save_checkpoint(prefix + ".net" + std::to_string(i) + ".ckpt",
                                                     static_cast<uint32_t>(cfg_.variant));
  std::ofstream meta(prefix + ".meta", std::ios::trunc);
  if (!meta) throw std::runtime_error("cannot write sidecar: " + prefix + ".meta");
  meta << "variant = " << variant_name(cfg_.variant) << "\n"
       << "seed = " << cfg_.seed << "\n"
       << "episodes = " << episodes_trained_ << "\n";
}

void DqnAgent::load(const std::string& prefix) {
  const std::string meta_path = prefix + ".meta";
  std::ifstream meta(meta_path);
  if (!meta) throw std::runtime_error("cannot open sidecar: " + meta_path);
  std::string line;
  std::string variant;
  int episodes = 0;
  while (std::getline(meta, line)) {
    std::istringstream ls(line);
    std::string key, eq, value;
    if (!(ls >> key >> eq >> value) || eq != "=") continue;
    if (key == "variant") variant = value;
    if (key == "episodes") episodes = std::stoi(value);
  }
  if (variant != variant_name(cfg_.variant))
    throw std::runtime_error("checkpoint variant " + variant + " does not match agent " +
                             variant_name(cfg_.variant));

  for (int i = 0; i < num_networks(); ++i) {
    const std::string path = prefix + ".net" + std::to_string(i) + ".ckpt";
    if (QNetwork::checkpoint_variant_tag(path) != static_cast<uint32_t>(cfg_.variant))
      throw std::runtime_error("checkpoint tag mismatch: " + path);
    online_[static_cast<size_t>(i)]->load_checkpoint(path);
    target_[static_cast<size_t>(i)]->copy_params_from(*online_[static_cast<size_t>(i)]);
  }
  episodes_trained_ = episodes;
}

}  // namespace fruitgrid
