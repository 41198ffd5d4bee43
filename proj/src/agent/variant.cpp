#include "fruitgrid/agent/variant.hpp"

#include <array>
#include <stdexcept>

#include "fruitgrid/env/env.hpp"

namespace fruitgrid {

namespace {

const std::array<const char*, kNumVariants> kNames = {
    "global_nocenter",      "global_centerpad",      "global_centerroll",
    "globallocal_nocenter", "globallocal_centerpad", "globallocal_centerroll",
    "integrated_nocenter",  "integrated_centerpad",  "integrated_centerroll",
    "summary3x3",           "summary5x5",
};

// 12/16-kernel conv stack; valid on the 11x11 inputs, same-padded on the
// small square inputs where a valid 3x3 would leave no room for the second
// convolution.
std::vector<LayerSpec> conv_stack(PadMode pad) {
  return {LayerSpec::conv(12, 3, pad), LayerSpec::relu(), LayerSpec::conv(16, 3, pad),
          LayerSpec::relu(), LayerSpec::flatten()};
}

std::vector<LayerSpec> dense_trunk() {
  return {LayerSpec::dense(16), LayerSpec::relu(), LayerSpec::dense(kNumActions)};
}

}  // namespace

const std::vector<VariantId>& all_variants() {
  static const std::vector<VariantId> v = [] {
    std::vector<VariantId> out;
    for (int i = 0; i < kNumVariants; ++i) out.push_back(static_cast<VariantId>(i));
    return out;
  }();
  return v;
}

std::string variant_name(VariantId v) { return kNames[static_cast<size_t>(v)]; }

VariantId variant_from_name(const std::string& name) {
  for (int i = 0; i < kNumVariants; ++i)
    if (name == kNames[static_cast<size_t>(i)]) return static_cast<VariantId>(i);
  throw std::invalid_argument("unknown variant: " + name);
}

const VariantTraits& variant_traits(VariantId v) {
  static const std::array<VariantTraits, kNumVariants> table = [] {
    std::array<VariantTraits, kNumVariants> t{};
    auto set = [&t](VariantId id, VariantTraits tr) { t[static_cast<size_t>(id)] = tr; };
    set(VariantId::GlobalNoCenter, {Centering::None, true, false, false, 0, false, false});
    set(VariantId::GlobalCenterPad, {Centering::Pad, true, false, false, 0, false, false});
    set(VariantId::GlobalCenterRoll, {Centering::Roll, true, false, false, 0, false, false});
    set(VariantId::GlobalLocalNoCenter, {Centering::None, true, true, false, 0, true, false});
    set(VariantId::GlobalLocalCenterPad, {Centering::Pad, true, true, false, 0, true, false});
    set(VariantId::GlobalLocalCenterRoll, {Centering::Roll, true, true, false, 0, true, false});
    set(VariantId::IntegratedNoCenter, {Centering::None, true, true, false, 0, false, true});
    set(VariantId::IntegratedCenterPad, {Centering::Pad, true, true, false, 0, false, true});
    set(VariantId::IntegratedCenterRoll, {Centering::Roll, true, true, false, 0, false, true});
    set(VariantId::Summary3x3, {Centering::None, false, false, true, 3, false, false});
    set(VariantId::Summary5x5, {Centering::None, false, false, true, 5, false, false});
    return t;
  }();
  return table[static_cast<size_t>(v)];
}

int variant_num_networks(VariantId v) { return variant_traits(v).two_networks ? 2 : 1; }

NetSpec variant_net_spec(VariantId v, int net_index) {
  const VariantTraits& tr = variant_traits(v);
  if (net_index < 0 || net_index >= variant_num_networks(v))
    throw std::invalid_argument("bad network index");

  NetSpec spec;
  spec.trunk = dense_trunk();

  if (tr.has_summary_view) {
    spec.main = {{2, tr.summary_k, tr.summary_k}, conv_stack(PadMode::Same)};
    return spec;
  }
  if (tr.two_networks && net_index == 1) {
    spec.main = {{2, 3, 3}, conv_stack(PadMode::Same)};  // local network
    return spec;
  }

  const int global_channels = (tr.centering == Centering::None) ? 3 : 2;
  spec.main = {{global_channels, kGridSize, kGridSize}, conv_stack(PadMode::Valid)};
  if (tr.integrated)
    spec.side = BranchSpec{{2, 3, 3},
                           {LayerSpec::conv(6, 2, PadMode::Valid), LayerSpec::relu(),
                            LayerSpec::flatten()}};
  return spec;
}

int variant_buffer_capacity(VariantId v, int net_index, int global_capacity, int local_capacity) {
  const VariantTraits& tr = variant_traits(v);
  if (tr.has_summary_view) return local_capacity;
  if (tr.two_networks && net_index == 1) return local_capacity;
  return global_capacity;
}

int64_t variant_expected_params(VariantId v, int net_index) {
  // conv: F*C*k*k + F; dense: out*in + out
  const VariantTraits& tr = variant_traits(v);
  if (tr.has_summary_view) {
    const int flat = 16 * tr.summary_k * tr.summary_k;
    return 228 + 1744 + (flat * 16 + 16) + 68;
  }
  if (tr.two_networks && net_index == 1) return 228 + 1744 + 2320 + 68;  // 2x3x3 same stack

  const int64_t conv1 = (tr.centering == Centering::None) ? 336 : 228;
  if (tr.integrated) return conv1 + 1744 + 54 + (808 * 16 + 16) + 68;
  return conv1 + 1744 + 12560 + 68;
}

}  // namespace fruitgrid
