#pragma once

#include "fruitgrid/core/tensor.hpp"
#include "fruitgrid/env/env.hpp"

namespace fruitgrid {

// Agent-centered views of the one-hot global state. All functions are pure;
// they are written for any odd-sized square grid even though the environment
// is fixed at 11x11.

enum class CenterMode { Roll, Pad };

// 2-channel agent-centered state; channel 0 = fruits, 1 = walls. The agent
// implicitly sits at the center cell.
struct CenteredState {
  Tensor t;  // 2 x H x W
  CenterMode mode = CenterMode::Roll;
};

inline constexpr double kSummaryDecay = 0.9;

// Circular shift: out[r][c] = in[(r - dr) mod H][(c - dc) mod W].
Tensor roll(const Tensor& plane, int dr, int dc);

// Torus centering: fruit/wall channels rolled so the agent lands on the
// center cell; the agent channel is dropped. Lossless.
CenteredState center_roll(const Tensor& global, GridPos agent);

// Window centering: the HxW window around the agent, zero fill outside the
// grid; agent channel dropped. Loses whatever falls outside the window.
CenteredState center_pad(const Tensor& global, GridPos agent);

// The 3x3 neighborhood around the (implicit, centered) agent.
// Requires a Pad-mode centered state.
Tensor extract_local(const CenteredState& c);

// One onion step: decay the outermost ring, smooth each ring point with its
// two ring neighbors, deposit the smoothed values one ring inward, return
// the inner (K-2)x(K-2) block. K must be odd and >= 3.
Tensor collapse_ring(const Tensor& plane, double decay);

// Iterated ring collapse down to a target x target view (target in {3,5}).
// Requires a Pad-mode centered state.
Tensor summarize(const CenteredState& c, int target, double decay = kSummaryDecay);

}  // namespace fruitgrid
