#pragma once

#include <cstdint>
#include <vector>

#include "fruitgrid/core/tensor.hpp"

namespace fruitgrid {

// Huber loss with transition point 1: quadratic for |e| <= 1, linear beyond.
struct HuberResult {
  double loss = 0.0;
  double grad = 0.0;  // d loss / d pred
};
HuberResult huber_loss(double pred, double target);

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Tensor> m, v;
  int64_t step = 0;
  void init_like(const std::vector<Tensor*>& params);
};

// One bias-corrected Adam step, in place. Throws on non-finite gradients.
void adam_step(const std::vector<Tensor*>& params, const std::vector<Tensor*>& grads,
               AdamState& state, const AdamConfig& cfg);

// theta_target <- tau * theta_online + (1 - tau) * theta_target
void polyak_update(const std::vector<Tensor*>& target_params,
                   const std::vector<const Tensor*>& online_params, double tau);

}  // namespace fruitgrid
