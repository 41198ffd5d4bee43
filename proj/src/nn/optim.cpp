#include "fruitgrid/nn/optim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fruitgrid {

HuberResult huber_loss(double pred, double target) {
  const double e = pred - target;
  if (std::abs(e) <= 1.0) return {0.5 * e * e, e};
  return {std::abs(e) - 0.5, e > 0.0 ? 1.0 : -1.0};
}

void AdamState::init_like(const std::vector<Tensor*>& params) {
  m.clear();
  v.clear();
  for (const Tensor* p : params) {
    m.emplace_back(p->shape);
    v.emplace_back(p->shape);
  }
  step = 0;
}

void adam_step(const std::vector<Tensor*>& params, const std::vector<Tensor*>& grads,
               AdamState& state, const AdamConfig& cfg) {
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw std::invalid_argument("adam_step: mismatched parameter/gradient/state counts");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));

  for (size_t t = 0; t < params.size(); ++t) {
    Tensor& p = *params[t];
    const Tensor& g = *grads[t];
    if (!p.same_shape(g)) throw std::invalid_argument("adam_step: shape mismatch");
    Tensor& m = state.m[t];
    Tensor& v = state.v[t];
    for (size_t i = 0; i < p.data.size(); ++i) {
      const double gi = g.data[i];
      if (!std::isfinite(gi)) {
        std::ostringstream os;
        os << "adam_step: non-finite gradient " << gi << " at tensor " << t << " index " << i;
        throw std::runtime_error(os.str());
      }
      m.data[i] = cfg.beta1 * m.data[i] + (1.0 - cfg.beta1) * gi;
      v.data[i] = cfg.beta2 * v.data[i] + (1.0 - cfg.beta2) * gi * gi;
      const double mhat = m.data[i] / bc1;
      const double vhat = v.data[i] / bc2;
      p.data[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

void polyak_update(const std::vector<Tensor*>& target_params,
                   const std::vector<const Tensor*>& online_params, double tau) {
  if (target_params.size() != online_params.size())
    throw std::invalid_argument("polyak_update: mismatched parameter counts");
  for (size_t t = 0; t < target_params.size(); ++t) {
    Tensor& tp = *target_params[t];
    const Tensor& op = *online_params[t];
    if (!tp.same_shape(op)) throw std::invalid_argument("polyak_update: shape mismatch");
    for (size_t i = 0; i < tp.data.size(); ++i)
      tp.data[i] = tau * op.data[i] + (1.0 - tau) * tp.data[i];
  }
}

}  // namespace fruitgrid
