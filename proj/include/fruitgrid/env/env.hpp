#pragma once

#include <cstdint>
#include <vector>

#include "fruitgrid/core/rng.hpp"
#include "fruitgrid/core/tensor.hpp"

namespace fruitgrid {

// Fruit Collection gridworld: 11x11 cells, one-cell wall border, an agent
// and up to five fruits on the 81 interior cells. Entering a fruit cell
// pays +1 and removes the fruit; an episode ends when all fruits are
// collected or after 80 steps.

inline constexpr int kGridSize = 11;
inline constexpr int kInteriorMin = 1;
inline constexpr int kInteriorMax = 9;
inline constexpr int kNumFruits = 5;
inline constexpr int kMaxEpisodeSteps = 80;
inline constexpr int kNumActions = 4;

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };

struct GridPos {
  int row = 0;
  int col = 0;
  bool operator==(const GridPos&) const = default;
};

inline bool is_wall(int row, int col) {
  return row == 0 || row == kGridSize - 1 || col == 0 || col == kGridSize - 1;
}
inline bool is_interior(GridPos p) { return !is_wall(p.row, p.col); }

struct EnvState {
  GridPos agent;
  std::vector<GridPos> fruits;  // pairwise distinct, interior only
  int step_count = 0;
  uint64_t rng_state = 0;  // generator state after initial placement

  bool done() const { return fruits.empty() || step_count >= kMaxEpisodeSteps; }
};

struct StepResult {
  EnvState state;
  double reward = 0.0;
  bool done = false;
};

// Places the agent and 5 fruits on 6 distinct interior cells, uniformly
// without replacement. Identical seed, identical state.
EnvState env_reset(uint64_t seed);

// Deterministic transition: move one cell in the chosen direction, stay put
// on a wall bump. Throws std::logic_error if the state is already terminal.
StepResult env_step(const EnvState& state, Action action);

// One-hot 3x11x11 rendering; channels: 0 = agent, 1 = fruits, 2 = walls.
Tensor env_observe(const EnvState& state);

}  // namespace fruitgrid
