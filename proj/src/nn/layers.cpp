#include "fruitgrid/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fruitgrid {

namespace {

void he_uniform(Tensor& w, int fan_in, Rng& rng) {
  const double limit = std::sqrt(6.0 / fan_in);
  for (double& v : w.data) v = rng.uniform(-limit, limit);
}

class Conv2dLayer final : public Layer {
 public:
  Conv2dLayer(const LayerSpec& spec, const std::vector<int>& in_shape) {
    if (in_shape.size() != 3) throw std::invalid_argument("conv input must be CxHxW");
    in_ = in_shape;
    k_ = spec.kernel;
    pad_ = (spec.pad == PadMode::Same) ? k_ / 2 : 0;
    if (spec.pad == PadMode::Same && k_ % 2 == 0)
      throw std::invalid_argument("same-padded conv requires odd kernel");
    const int oh = in_[1] - k_ + 1 + 2 * pad_;
    const int ow = in_[2] - k_ + 1 + 2 * pad_;
    if (oh < 1 || ow < 1) throw std::invalid_argument("conv kernel larger than input");
    out_ = {spec.out_channels, oh, ow};
    w_ = Tensor({spec.out_channels, in_[0], k_, k_});
    b_ = Tensor({spec.out_channels});
    gw_ = Tensor(w_.shape);
    gb_ = Tensor(b_.shape);
  }

  LayerKind kind() const override { return LayerKind::Conv2d; }
  const std::vector<int>& in_shape() const override { return in_; }
  const std::vector<int>& out_shape() const override { return out_; }

  void forward(const Tensor& in, Tensor& out) const override {
    const int c_in = in_[0], h = in_[1], w = in_[2];
    const int f_out = out_[0], oh = out_[1], ow = out_[2];
    const double* x = in.ptr();
    double* y = out.ptr();
    for (int f = 0; f < f_out; ++f) {
      double* yf = y + static_cast<size_t>(f) * oh * ow;
      std::fill(yf, yf + static_cast<size_t>(oh) * ow, b_.data[static_cast<size_t>(f)]);
      for (int c = 0; c < c_in; ++c) {
        const double* xc = x + static_cast<size_t>(c) * h * w;
        const double* wfc = w_.ptr() + (static_cast<size_t>(f) * c_in + c) * k_ * k_;
        for (int a = 0; a < k_; ++a)
          for (int b = 0; b < k_; ++b) {
            const double wv = wfc[a * k_ + b];
            const int i0 = std::max(0, pad_ - a), i1 = std::min(oh - 1, h - 1 - a + pad_);
            const int j0 = std::max(0, pad_ - b), j1 = std::min(ow - 1, w - 1 - b + pad_);
            for (int i = i0; i <= i1; ++i) {
              const double* src = xc + static_cast<size_t>(i + a - pad_) * w + (j0 + b - pad_);
              double* dst = yf + static_cast<size_t>(i) * ow + j0;
              const int len = j1 - j0 + 1;
              for (int j = 0; j < len; ++j) dst[j] += wv * src[j];
            }
          }
      }
    }
  }

  void backward(const Tensor& in, const Tensor& grad_out, Tensor& grad_in) override {
    const int c_in = in_[0], h = in_[1], w = in_[2];
    const int f_out = out_[0], oh = out_[1], ow = out_[2];
    grad_in.fill(0.0);
    const double* x = in.ptr();
    const double* go = grad_out.ptr();
    double* gx = grad_in.ptr();

    for (int f = 0; f < f_out; ++f) {
      const double* gof = go + static_cast<size_t>(f) * oh * ow;
      double acc = 0.0;
      for (int i = 0; i < oh * ow; ++i) acc += gof[i];
      gb_.data[static_cast<size_t>(f)] += acc;

      for (int c = 0; c < c_in; ++c) {
        const double* xc = x + static_cast<size_t>(c) * h * w;
        double* gxc = gx + static_cast<size_t>(c) * h * w;
        const double* wfc = w_.ptr() + (static_cast<size_t>(f) * c_in + c) * k_ * k_;
        double* gwfc = gw_.ptr() + (static_cast<size_t>(f) * c_in + c) * k_ * k_;
        for (int a = 0; a < k_; ++a)
          for (int b = 0; b < k_; ++b) {
            const double wv = wfc[a * k_ + b];
            const int i0 = std::max(0, pad_ - a), i1 = std::min(oh - 1, h - 1 - a + pad_);
            const int j0 = std::max(0, pad_ - b), j1 = std::min(ow - 1, w - 1 - b + pad_);
            double gw_acc = 0.0;
            for (int i = i0; i <= i1; ++i) {
              const size_t in_off = static_cast<size_t>(i + a - pad_) * w + (j0 + b - pad_);
              const double* go_row = gof + static_cast<size_t>(i) * ow + j0;
              const double* x_row = xc + in_off;
              double* gx_row = gxc + in_off;
              const int len = j1 - j0 + 1;
              for (int j = 0; j < len; ++j) {
                gw_acc += x_row[j] * go_row[j];
                gx_row[j] += wv * go_row[j];
              }
            }
            gwfc[a * k_ + b] += gw_acc;
          }
      }
    }
  }

  std::vector<Tensor*> params() override { return {&w_, &b_}; }
  std::vector<Tensor*> grads() override { return {&gw_, &gb_}; }
  void init_params(Rng& rng) override { he_uniform(w_, in_[0] * k_ * k_, rng); b_.fill(0.0); }

 private:
  std::vector<int> in_, out_;
  int k_ = 0, pad_ = 0;
  Tensor w_, b_, gw_, gb_;
};

class DenseLayer final : public Layer {
 public:
  DenseLayer(const LayerSpec& spec, const std::vector<int>& in_shape) {
    if (in_shape.size() != 1) throw std::invalid_argument("dense input must be flat");
    in_ = in_shape;
    out_ = {spec.out_features};
    w_ = Tensor({spec.out_features, in_[0]});
    b_ = Tensor({spec.out_features});
    gw_ = Tensor(w_.shape);
    gb_ = Tensor(b_.shape);
  }

  LayerKind kind() const override { return LayerKind::Dense; }
  const std::vector<int>& in_shape() const override { return in_; }
  const std::vector<int>& out_shape() const override { return out_; }

  void forward(const Tensor& in, Tensor& out) const override {
    const int n_in = in_[0], n_out = out_[0];
    const double* x = in.ptr();
    for (int r = 0; r < n_out; ++r) {
      const double* wr = w_.ptr() + static_cast<size_t>(r) * n_in;
      double acc = b_.data[static_cast<size_t>(r)];
      for (int i = 0; i < n_in; ++i) acc += wr[i] * x[i];
      out.data[static_cast<size_t>(r)] = acc;
    }
  }

  void backward(const Tensor& in, const Tensor& grad_out, Tensor& grad_in) override {
    const int n_in = in_[0], n_out = out_[0];
    grad_in.fill(0.0);
    const double* x = in.ptr();
    double* gx = grad_in.ptr();
    for (int r = 0; r < n_out; ++r) {
      const double g = grad_out.data[static_cast<size_t>(r)];
      gb_.data[static_cast<size_t>(r)] += g;
      const double* wr = w_.ptr() + static_cast<size_t>(r) * n_in;
      double* gwr = gw_.ptr() + static_cast<size_t>(r) * n_in;
      for (int i = 0; i < n_in; ++i) {
        gwr[i] += g * x[i];
        gx[i] += g * wr[i];
      }
    }
  }

  std::vector<Tensor*> params() override { return {&w_, &b_}; }
  std::vector<Tensor*> grads() override { return {&gw_, &gb_}; }
  void init_params(Rng& rng) override { he_uniform(w_, in_[0], rng); b_.fill(0.0); }

 private:
  std::vector<int> in_, out_;
  Tensor w_, b_, gw_, gb_;
};

class ReluLayer final : public Layer {
 public:
  explicit ReluLayer(const std::vector<int>& in_shape) : in_(in_shape) {}
  LayerKind kind() const override { return LayerKind::Relu; }
  const std::vector<int>& in_shape() const override { return in_; }
  const std::vector<int>& out_shape() const override { return in_; }

  void forward(const Tensor& in, Tensor& out) const override {
    for (size_t i = 0; i < in.data.size(); ++i) out.data[i] = in.data[i] > 0.0 ? in.data[i] : 0.0;
  }
  // subgradient 0 at exactly 0
  void backward(const Tensor& in, const Tensor& grad_out, Tensor& grad_in) override {
    for (size_t i = 0; i < in.data.size(); ++i)
      grad_in.data[i] = in.data[i] > 0.0 ? grad_out.data[i] : 0.0;
  }

 private:
  std::vector<int> in_;
};

class FlattenLayer final : public Layer {
 public:
  explicit FlattenLayer(const std::vector<int>& in_shape)
      : in_(in_shape), out_({static_cast<int>(Tensor::numel(in_shape))}) {}
  LayerKind kind() const override { return LayerKind::Flatten; }
  const std::vector<int>& in_shape() const override { return in_; }
  const std::vector<int>& out_shape() const override { return out_; }

  void forward(const Tensor& in, Tensor& out) const override { out.data = in.data; }
  void backward(const Tensor&, const Tensor& grad_out, Tensor& grad_in) override {
    grad_in.data = grad_out.data;
  }

 private:
  std::vector<int> in_, out_;
};

}  // namespace

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, const std::vector<int>& in_shape) {
  switch (spec.kind) {
    case LayerKind::Conv2d:
      return std::make_unique<Conv2dLayer>(spec, in_shape);
    case LayerKind::Dense:
      return std::make_unique<DenseLayer>(spec, in_shape);
    case LayerKind::Relu:
      return std::make_unique<ReluLayer>(in_shape);
    case LayerKind::Flatten:
      return std::make_unique<FlattenLayer>(in_shape);
  }
  throw std::invalid_argument("unknown layer kind");
}

}  // namespace fruitgrid
