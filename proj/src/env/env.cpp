#include "fruitgrid/env/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace fruitgrid {

EnvState env_reset(uint64_t seed) {
  Rng rng(seed);

  // 81 interior cells, partial Fisher-Yates for 6 distinct draws
  constexpr int kInterior = (kInteriorMax - kInteriorMin + 1) * (kInteriorMax - kInteriorMin + 1);
  int cells[kInterior];
  for (int i = 0; i < kInterior; ++i) cells[i] = i;
  auto to_pos = [](int idx) {
    return GridPos{kInteriorMin + idx / 9, kInteriorMin + idx % 9};
  };

  EnvState s;
  for (int k = 0; k < kNumFruits + 1; ++k) {
    int j = k + rng.uniform_int(kInterior - k);
    std::swap(cells[k], cells[j]);
    if (k == 0)
      s.agent = to_pos(cells[k]);
    else
      s.fruits.push_back(to_pos(cells[k]));
  }
  s.step_count = 0;
  s.rng_state = rng.next();
  return s;
}

StepResult env_step(const EnvState& state, Action action) {
  if (state.done())
    throw std::logic_error("env_step: episode already terminated; reset first");

  static constexpr int kDRow[kNumActions] = {-1, 1, 0, 0};
  static constexpr int kDCol[kNumActions] = {0, 0, -1, 1};
  const int a = static_cast<int>(action);

  StepResult r;
  r.state = state;
  GridPos target{state.agent.row + kDRow[a], state.agent.col + kDCol[a]};
  if (is_interior(target)) r.state.agent = target;  // wall bump: stay put

  auto it = std::find(r.state.fruits.begin(), r.state.fruits.end(), r.state.agent);
  if (it != r.state.fruits.end()) {
    r.state.fruits.erase(it);
    r.reward = 1.0;
  }
  r.state.step_count = state.step_count + 1;
  r.done = r.state.done();
  return r;
}

Tensor env_observe(const EnvState& state) {
  Tensor t({3, kGridSize, kGridSize});
  t(0, state.agent.row, state.agent.col) = 1.0;
  for (const GridPos& f : state.fruits) t(1, f.row, f.col) = 1.0;
  for (int i = 0; i < kGridSize; ++i)
    for (int j = 0; j < kGridSize; ++j)
      if (is_wall(i, j)) t(2, i, j) = 1.0;
  return t;
}

}  // namespace fruitgrid
