#include "fruitgrid/nn/network.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fruitgrid {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

QNetwork::Segment QNetwork::build_segment(const std::vector<LayerSpec>& specs,
                                          const std::vector<int>& in_shape) {
  Segment seg;
  std::vector<int> shape = in_shape;
  seg.acts.emplace_back(shape);
  seg.grad_acts.emplace_back(shape);
  for (const LayerSpec& ls : specs) {
    seg.layers.push_back(make_layer(ls, shape));
    shape = seg.layers.back()->out_shape();
    seg.acts.emplace_back(shape);
    seg.grad_acts.emplace_back(shape);
  }
  return seg;
}

QNetwork::QNetwork(NetSpec spec, uint64_t init_seed) : spec_(std::move(spec)) {
  main_ = build_segment(spec_.main.layers, spec_.main.in_shape);
  if (main_.acts.back().ndim() != 1)
    throw std::invalid_argument("main branch must end in a flat vector");

  int trunk_in = main_.acts.back().dim(0);
  if (spec_.side) {
    side_ = build_segment(spec_.side->layers, spec_.side->in_shape);
    if (side_.acts.back().ndim() != 1)
      throw std::invalid_argument("side branch must end in a flat vector");
    trunk_in += side_.acts.back().dim(0);
  }

  trunk_ = build_segment(spec_.trunk, {trunk_in});
  const Tensor& out = trunk_.acts.back();
  if (out.ndim() != 1 || out.dim(0) != kNumQValues)
    throw std::invalid_argument("network must produce exactly 4 action values");

  Rng rng(init_seed);
  for_each_layer([&rng](Layer& l) { l.init_params(rng); });
  adam_.init_like(params());
}

void QNetwork::for_each_layer(const std::function<void(Layer&)>& fn) {
  for (auto& l : main_.layers) fn(*l);
  for (auto& l : side_.layers) fn(*l);
  for (auto& l : trunk_.layers) fn(*l);
}

std::vector<Tensor*> QNetwork::params() {
  std::vector<Tensor*> out;
  for_each_layer([&out](Layer& l) {
    for (Tensor* p : l.params()) out.push_back(p);
  });
  return out;
}

std::vector<Tensor*> QNetwork::grads() {
  std::vector<Tensor*> out;
  for_each_layer([&out](Layer& l) {
    for (Tensor* g : l.grads()) out.push_back(g);
  });
  return out;
}

std::vector<const Tensor*> QNetwork::params() const {
  auto* self = const_cast<QNetwork*>(this);
  std::vector<const Tensor*> out;
  for (Tensor* p : self->params()) out.push_back(p);
  return out;
}

int64_t QNetwork::num_params() const {
  int64_t n = 0;
  for (const Tensor* p : params()) n += p->size();
  return n;
}

void QNetwork::run_forward(Segment& seg) {
  for (size_t i = 0; i < seg.layers.size(); ++i)
    seg.layers[i]->forward(seg.acts[i], seg.acts[i + 1]);
}

void QNetwork::run_backward(Segment& seg) {
  for (size_t i = seg.layers.size(); i-- > 0;)
    seg.layers[i]->backward(seg.acts[i], seg.grad_acts[i + 1], seg.grad_acts[i]);
}

std::array<double, kNumQValues> QNetwork::forward(const Tensor& main_in, const Tensor* side_in) {
  if (main_in.shape != spec_.main.in_shape)
    throw std::invalid_argument("forward: main input shape " + shape_str(main_in.shape) +
                                " does not match " + shape_str(spec_.main.in_shape));
  if (spec_.side.has_value() != (side_in != nullptr))
    throw std::invalid_argument("forward: side input presence does not match the network");
  if (side_in && side_in->shape != spec_.side->in_shape)
    throw std::invalid_argument("forward: side input shape mismatch");

  main_.acts[0].data = main_in.data;
  run_forward(main_);
  const Tensor& m_out = main_.acts.back();

  Tensor& t_in = trunk_.acts[0];
  std::memcpy(t_in.ptr(), m_out.ptr(), sizeof(double) * m_out.data.size());
  if (side_in) {
    side_.acts[0].data = side_in->data;
    run_forward(side_);
    const Tensor& s_out = side_.acts.back();
    std::memcpy(t_in.ptr() + m_out.data.size(), s_out.ptr(), sizeof(double) * s_out.data.size());
  }
  run_forward(trunk_);

  std::array<double, kNumQValues> q;
  for (int a = 0; a < kNumQValues; ++a) q[static_cast<size_t>(a)] = trunk_.acts.back()(a);
  return q;
}

void QNetwork::backward(const std::array<double, kNumQValues>& grad_q) {
  Tensor& gq = trunk_.grad_acts.back();
  for (int a = 0; a < kNumQValues; ++a) gq(a) = grad_q[static_cast<size_t>(a)];
  run_backward(trunk_);

  const Tensor& t_grad = trunk_.grad_acts[0];
  const size_t m_len = main_.grad_acts.back().data.size();
  std::memcpy(main_.grad_acts.back().ptr(), t_grad.ptr(), sizeof(double) * m_len);
  run_backward(main_);
  if (spec_.side) {
    const size_t s_len = side_.grad_acts.back().data.size();
    std::memcpy(side_.grad_acts.back().ptr(), t_grad.ptr() + m_len, sizeof(double) * s_len);
    run_backward(side_);
  }
}

void QNetwork::zero_grads() {
  for (Tensor* g : grads()) g->fill(0.0);
}

void QNetwork::adam_update(const AdamConfig& cfg) { adam_step(params(), grads(), adam_, cfg); }

void QNetwork::copy_params_from(const QNetwork& other) {
  auto dst = params();
  auto src = other.params();
  if (dst.size() != src.size()) throw std::invalid_argument("copy_params_from: layout mismatch");
  for (size_t i = 0; i < dst.size(); ++i) {
    if (!dst[i]->same_shape(*src[i]))
      throw std::invalid_argument("copy_params_from: shape mismatch");
    dst[i]->data = src[i]->data;
  }
}

double train_on_batch(QNetwork& net, const std::vector<BatchItem>& batch, const AdamConfig& cfg,
                      std::vector<double>* td_errors) {
  if (batch.empty()) throw std::invalid_argument("train_on_batch: empty batch");
  if (td_errors) td_errors->assign(batch.size(), 0.0);

  net.zero_grads();
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double mean_loss = 0.0;
  for (size_t s = 0; s < batch.size(); ++s) {
    const BatchItem& it = batch[s];
    const auto q = net.forward(*it.main, it.side);
    const HuberResult h = huber_loss(q[static_cast<size_t>(it.action)], it.target);
    if (td_errors) (*td_errors)[s] = q[static_cast<size_t>(it.action)] - it.target;
    mean_loss += it.weight * h.loss * inv_n;
    std::array<double, kNumQValues> gq{};
    gq[static_cast<size_t>(it.action)] = it.weight * h.grad * inv_n;
    net.backward(gq);
  }
  net.adam_update(cfg);
  return mean_loss;
}

// ---------------------------------------------------------------------------
// checkpoint io: see docs/checkpoint_format.md

namespace {

void put_u32(std::ofstream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t get_u32(std::ifstream& is) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

constexpr char kMagic[4] = {'F', 'G', 'Q', 'N'};
constexpr uint32_t kVersion = 1;

}  // namespace

void QNetwork::save_checkpoint(const std::string& path, uint32_t variant_tag) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);

  auto* self = const_cast<QNetwork*>(this);
  std::vector<Layer*> layers;
  self->for_each_layer([&layers](Layer& l) { layers.push_back(&l); });

  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, variant_tag);
  put_u32(os, static_cast<uint32_t>(layers.size()));
  for (Layer* l : layers) {
    put_u32(os, static_cast<uint32_t>(l->kind()));
    auto ps = l->params();
    put_u32(os, static_cast<uint32_t>(ps.size()));
    for (const Tensor* p : ps) {
      put_u32(os, static_cast<uint32_t>(p->shape.size()));
      for (int d : p->shape) put_u32(os, static_cast<uint32_t>(d));
      os.write(reinterpret_cast<const char*>(p->data.data()),
               static_cast<std::streamsize>(sizeof(double) * p->data.size()));
    }
  }
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

void QNetwork::load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);

  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  if (get_u32(is) != kVersion) throw std::runtime_error("unsupported checkpoint version: " + path);
  get_u32(is);  // variant tag, validated by callers that care

  std::vector<Layer*> layers;
  for_each_layer([&layers](Layer& l) { layers.push_back(&l); });
  if (get_u32(is) != layers.size())
    throw std::runtime_error("checkpoint layer count mismatch: " + path);

  for (Layer* l : layers) {
    if (get_u32(is) != static_cast<uint32_t>(l->kind()))
      throw std::runtime_error("checkpoint layer kind mismatch: " + path);
    auto ps = l->params();
    if (get_u32(is) != ps.size())
      throw std::runtime_error("checkpoint tensor count mismatch: " + path);
    for (Tensor* p : ps) {
      const uint32_t ndim = get_u32(is);
      std::vector<int> shape(ndim);
      for (uint32_t d = 0; d < ndim; ++d) shape[d] = static_cast<int>(get_u32(is));
      if (shape != p->shape) throw std::runtime_error("checkpoint shape mismatch: " + path);
      is.read(reinterpret_cast<char*>(p->data.data()),
              static_cast<std::streamsize>(sizeof(double) * p->data.size()));
    }
  }
  if (!is) throw std::runtime_error("checkpoint truncated: " + path);
}

uint32_t QNetwork::checkpoint_variant_tag(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  get_u32(is);  // version
  return get_u32(is);
}

}  // namespace fruitgrid
