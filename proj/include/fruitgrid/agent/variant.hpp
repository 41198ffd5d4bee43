#pragma once

#include <string>
#include <vector>

#include "fruitgrid/nn/network.hpp"

namespace fruitgrid {

// The eleven benchmark variants. Ordinals are stable; they are also the
// checkpoint variant tags.
enum class VariantId : int {
  GlobalNoCenter = 0,
  GlobalCenterPad = 1,
  GlobalCenterRoll = 2,
  GlobalLocalNoCenter = 3,
  GlobalLocalCenterPad = 4,
  GlobalLocalCenterRoll = 5,
  IntegratedNoCenter = 6,
  IntegratedCenterPad = 7,
  IntegratedCenterRoll = 8,
  Summary3x3 = 9,
  Summary5x5 = 10,
};

inline constexpr int kNumVariants = 11;

const std::vector<VariantId>& all_variants();
std::string variant_name(VariantId v);
VariantId variant_from_name(const std::string& name);  // throws on unknown names

enum class Centering { None, Pad, Roll };

struct VariantTraits {
  Centering centering = Centering::None;  // how the global view is centered
  bool has_global_view = true;
  bool has_local_view = false;    // 3x3 window views
  bool has_summary_view = false;  // summary-only input
  int summary_k = 0;
  bool two_networks = false;  // separate global and local nets
  bool integrated = false;    // local view enters the global net as a branch
};
const VariantTraits& variant_traits(VariantId v);

int variant_num_networks(VariantId v);

// Network topology for one of the variant's networks (net_index 1 is the
// local network of the two-network variants).
NetSpec variant_net_spec(VariantId v, int net_index);

// Replay capacity: networks fed the full global view keep 10000 transitions,
// local and summary networks 2400.
int variant_buffer_capacity(VariantId v, int net_index, int global_capacity, int local_capacity);

// Fixed parameter counts, asserted when agents are built.
int64_t variant_expected_params(VariantId v, int net_index);

}  // namespace fruitgrid
