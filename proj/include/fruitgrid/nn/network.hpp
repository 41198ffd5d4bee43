#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fruitgrid/nn/layers.hpp"
#include "fruitgrid/nn/optim.hpp"

namespace fruitgrid {

inline constexpr int kNumQValues = 4;

struct BranchSpec {
  std::vector<int> in_shape;
  std::vector<LayerSpec> layers;
};

// A Q-network is one or two convolutional branches whose flat outputs are
// concatenated and fed through a dense trunk ending in 4 action values.
struct NetSpec {
  BranchSpec main;
  std::optional<BranchSpec> side;
  std::vector<LayerSpec> trunk;
};

class QNetwork {
 public:
  QNetwork(NetSpec spec, uint64_t init_seed);

  const NetSpec& spec() const { return spec_; }
  bool has_side() const { return spec_.side.has_value(); }
  int64_t num_params() const;

  // Runs the net and caches activations for a subsequent backward().
  std::array<double, kNumQValues> forward(const Tensor& main_in, const Tensor* side_in = nullptr);

  // Backpropagates d loss / d Q from the most recent forward; parameter
  // gradients accumulate until zero_grads().
  void backward(const std::array<double, kNumQValues>& grad_q);

  void zero_grads();
  void adam_update(const AdamConfig& cfg);

  std::vector<Tensor*> params();
  std::vector<Tensor*> grads();
  std::vector<const Tensor*> params() const;
  const AdamState& adam_state() const { return adam_; }

  void copy_params_from(const QNetwork& other);

  void save_checkpoint(const std::string& path, uint32_t variant_tag) const;
  void load_checkpoint(const std::string& path);  // structure must match
  static uint32_t checkpoint_variant_tag(const std::string& path);

 private:
  struct Segment {
    std::vector<std::unique_ptr<Layer>> layers;
    std::vector<Tensor> acts;       // acts[0] = input
    std::vector<Tensor> grad_acts;  // same shapes as acts
  };

  static Segment build_segment(const std::vector<LayerSpec>& specs,
                               const std::vector<int>& in_shape);
  static void run_forward(Segment& seg);
  static void run_backward(Segment& seg);
  void for_each_layer(const std::function<void(Layer&)>& fn);

  NetSpec spec_;
  Segment main_, side_, trunk_;
  AdamState adam_;
};

// One weighted DQN batch: per sample, Huber loss of Q(obs)[action] against
// the target, loss gradient scaled by weight, mean over the batch, then a
// single Adam step. Returns the mean weighted loss; td_errors (pred - target)
// are written per sample when requested.
struct BatchItem {
  const Tensor* main = nullptr;
  const Tensor* side = nullptr;
  int action = 0;
  double target = 0.0;
  double weight = 1.0;
};
double train_on_batch(QNetwork& net, const std::vector<BatchItem>& batch, const AdamConfig& cfg,
                      std::vector<double>* td_errors = nullptr);

}  // namespace fruitgrid
