#include "fruitgrid/agent/observation.hpp"

#include <stdexcept>

namespace fruitgrid {

ObservationBundle build_observation(VariantId v, const Tensor& global3, GridPos agent,
                                    double summary_decay) {
  const VariantTraits& tr = variant_traits(v);
  ObservationBundle out;

  if (tr.has_global_view) {
    switch (tr.centering) {
      case Centering::None:
        out.global = global3;
        break;
      case Centering::Pad:
        out.global = center_pad(global3, agent).t;
        break;
      case Centering::Roll:
        out.global = center_roll(global3, agent).t;
        break;
    }
  }
  if (tr.has_local_view) out.local = extract_local(center_pad(global3, agent));
  if (tr.has_summary_view)
    out.summary = summarize(center_pad(global3, agent), tr.summary_k, summary_decay);
  return out;
}

NetInput to_net_input(VariantId v, int net_index, const ObservationBundle& obs) {
  const VariantTraits& tr = variant_traits(v);
  NetInput in;
  if (tr.has_summary_view) {
    in.main = obs.summary;
    return in;
  }
  if (tr.two_networks && net_index == 1) {
    in.main = obs.local;
    return in;
  }
  in.main = obs.global;
  if (tr.integrated) in.side = obs.local;
  return in;
}

}  // namespace fruitgrid
