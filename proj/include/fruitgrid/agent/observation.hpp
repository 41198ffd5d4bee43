#pragma once

#include "fruitgrid/agent/variant.hpp"
#include "fruitgrid/env/env.hpp"
#include "fruitgrid/transforms/transforms.hpp"

namespace fruitgrid {

// The views a variant's networks consume; tensors are empty when the view
// does not apply.
struct ObservationBundle {
  Tensor global;   // 3x11x11 raw or 2x11x11 centered
  Tensor local;    // 2x3x3
  Tensor summary;  // 2xKxK
};

ObservationBundle build_observation(VariantId v, const Tensor& global3, GridPos agent,
                                    double summary_decay = kSummaryDecay);

// Inputs for one of the variant's networks; side stays empty except for the
// integrated variants' local branch.
struct NetInput {
  Tensor main;
  Tensor side;
};

NetInput to_net_input(VariantId v, int net_index, const ObservationBundle& obs);

}  // namespace fruitgrid
