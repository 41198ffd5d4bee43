#include "fruitgrid/transforms/transforms.hpp"

#include <stdexcept>
#include <vector>

namespace fruitgrid {

namespace {

int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void check_global(const Tensor& g, GridPos agent) {
  if (g.ndim() != 3 || g.dim(0) != 3)
    throw std::invalid_argument("centering expects a 3-channel global state");
  if (g(0, agent.row, agent.col) != 1.0)
    throw std::invalid_argument("agent coordinates do not match the agent channel");
}

}  // namespace

Tensor roll(const Tensor& plane, int dr, int dc) {
  if (plane.ndim() != 2) throw std::invalid_argument("roll expects a 2-d plane");
  const int h = plane.dim(0), w = plane.dim(1);
  Tensor out({h, w});
  for (int r = 0; r < h; ++r) {
    const int sr = mod(r - dr, h);
    for (int c = 0; c < w; ++c) out(r, c) = plane(sr, mod(c - dc, w));
  }
  return out;
}

CenteredState center_roll(const Tensor& global, GridPos agent) {
  check_global(global, agent);
  const int h = global.dim(1), w = global.dim(2);
  const int cr = (h - 1) / 2, cc = (w - 1) / 2;

  CenteredState out{Tensor({2, h, w}), CenterMode::Roll};
  for (int ch = 0; ch < 2; ++ch) {
    const int dr = cr - agent.row, dc = cc - agent.col;
    for (int r = 0; r < h; ++r) {
      const int sr = mod(r - dr, h);
      for (int c = 0; c < w; ++c) out.t(ch, r, c) = global(ch + 1, sr, mod(c - dc, w));
    }
  }
  return out;
}

CenteredState center_pad(const Tensor& global, GridPos agent) {
  check_global(global, agent);
  const int h = global.dim(1), w = global.dim(2);
  const int cr = (h - 1) / 2, cc = (w - 1) / 2;

  CenteredState out{Tensor({2, h, w}), CenterMode::Pad};
  for (int ch = 0; ch < 2; ++ch)
    for (int r = 0; r < h; ++r) {
      const int sr = r + agent.row - cr;
      if (sr < 0 || sr >= h) continue;
      for (int c = 0; c < w; ++c) {
        const int sc = c + agent.col - cc;
        if (sc >= 0 && sc < w) out.t(ch, r, c) = global(ch + 1, sr, sc);
      }
    }
  return out;
}

Tensor extract_local(const CenteredState& c) {
  if (c.mode != CenterMode::Pad)
    throw std::invalid_argument("extract_local requires a Pad-mode centered state");
  const int h = c.t.dim(1), w = c.t.dim(2);
  const int cr = (h - 1) / 2, cc = (w - 1) / 2;

  Tensor out({2, 3, 3});
  for (int ch = 0; ch < 2; ++ch)
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col) out(ch, r, col) = c.t(ch, cr - 1 + r, cc - 1 + col);
  return out;
}

Tensor collapse_ring(const Tensor& plane, double decay) {
  if (plane.ndim() != 2 || plane.dim(0) != plane.dim(1))
    throw std::invalid_argument("collapse_ring expects a square plane");
  const int k = plane.dim(0);
  if (k < 3 || k % 2 == 0)
    throw std::invalid_argument("collapse_ring requires odd size >= 3");

  // outermost ring in circular order: top row, right column, bottom row
  // (reversed), left column (reversed)
  std::vector<std::pair<int, int>> ring;
  ring.reserve(4 * (k - 1));
  for (int c = 0; c < k; ++c) ring.emplace_back(0, c);
  for (int r = 1; r < k - 1; ++r) ring.emplace_back(r, k - 1);
  for (int c = k - 1; c >= 0; --c) ring.emplace_back(k - 1, c);
  for (int r = k - 2; r >= 1; --r) ring.emplace_back(r, 0);
  const int n = static_cast<int>(ring.size());

  std::vector<double> decayed(n);
  for (int i = 0; i < n; ++i) decayed[i] = decay * plane(ring[i].first, ring[i].second);

  // inner block plus deposits from the smoothed ring
  Tensor out({k - 2, k - 2});
  for (int r = 0; r < k - 2; ++r)
    for (int c = 0; c < k - 2; ++c) out(r, c) = plane(r + 1, c + 1);

  for (int i = 0; i < n; ++i) {
    const double m = (decayed[(i + n - 1) % n] + decayed[i] + decayed[(i + 1) % n]) / 3.0;
    // every coordinate sitting on the ring steps one cell toward the center,
    // so edge points deposit straight inward and corners diagonally inward
    auto [r, c] = ring[i];
    const int tr = (r == 0) ? 1 : (r == k - 1) ? k - 2 : r;
    const int tc = (c == 0) ? 1 : (c == k - 1) ? k - 2 : c;
    out(tr - 1, tc - 1) += m;
  }
  return out;
}

Tensor summarize(const CenteredState& c, int target, double decay) {
  if (c.mode != CenterMode::Pad)
    throw std::invalid_argument("summarize requires a Pad-mode centered state");
  if (target != 3 && target != 5) throw std::invalid_argument("summary target must be 3 or 5");
  const int h = c.t.dim(1);
  if (target > h) throw std::invalid_argument("summary target exceeds state size");

  Tensor out({2, target, target});
  for (int ch = 0; ch < 2; ++ch) {
    Tensor plane({h, h});
    for (int r = 0; r < h; ++r)
      for (int col = 0; col < h; ++col) plane(r, col) = c.t(ch, r, col);
    while (plane.dim(0) > target) plane = collapse_ring(plane, decay);
    for (int r = 0; r < target; ++r)
      for (int col = 0; col < target; ++col) out(ch, r, col) = plane(r, col);
  }
  return out;
}

}  // namespace fruitgrid
