#pragma once

#include <memory>
#include <vector>

#include "fruitgrid/core/rng.hpp"
#include "fruitgrid/core/tensor.hpp"

namespace fruitgrid {

enum class LayerKind : int { Conv2d = 0, Dense = 1, Relu = 2, Flatten = 3 };
enum class PadMode : int { Valid = 0, Same = 1 };

struct LayerSpec {
  LayerKind kind = LayerKind::Relu;
  int out_channels = 0;  // Conv2d
  int kernel = 0;        // Conv2d
  PadMode pad = PadMode::Valid;
  int out_features = 0;  // Dense

  static LayerSpec conv(int out_channels, int kernel, PadMode pad) {
    return {LayerKind::Conv2d, out_channels, kernel, pad, 0};
  }
  static LayerSpec dense(int out_features) {
    return {LayerKind::Dense, 0, 0, PadMode::Valid, out_features};
  }
  static LayerSpec relu() { return {LayerKind::Relu, 0, 0, PadMode::Valid, 0}; }
  static LayerSpec flatten() { return {LayerKind::Flatten, 0, 0, PadMode::Valid, 0}; }
};

// One layer with fixed input/output shapes. Parameter gradients accumulate
// across backward calls until explicitly zeroed, which is what batch
// accumulation relies on.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual LayerKind kind() const = 0;
  virtual const std::vector<int>& in_shape() const = 0;
  virtual const std::vector<int>& out_shape() const = 0;
  virtual void forward(const Tensor& in, Tensor& out) const = 0;
  // grad_in is overwritten; param grads accumulate
  virtual void backward(const Tensor& in, const Tensor& grad_out, Tensor& grad_in) = 0;
  virtual std::vector<Tensor*> params() { return {}; }
  virtual std::vector<Tensor*> grads() { return {}; }
  virtual void init_params(Rng&) {}
};

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, const std::vector<int>& in_shape);

}  // namespace fruitgrid
