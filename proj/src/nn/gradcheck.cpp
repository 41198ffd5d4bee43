#include "fruitgrid/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace fruitgrid {

double gradient_check(QNetwork& net, const Tensor& main_in, const Tensor* side_in, Rng& rng,
                      int max_checks_per_tensor, double eps) {
  std::array<double, kNumQValues> coeffs;
  for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);

  auto loss = [&]() {
    const auto q = net.forward(main_in, side_in);
    double l = 0.0;
    for (int a = 0; a < kNumQValues; ++a) l += coeffs[static_cast<size_t>(a)] * q[static_cast<size_t>(a)];
    return l;
  };

  net.zero_grads();
  loss();
  net.backward(coeffs);

  auto params = net.params();
  auto grads = net.grads();
  double max_rel = 0.0;
  for (size_t t = 0; t < params.size(); ++t) {
    Tensor& p = *params[t];
    const Tensor& g = *grads[t];
    const int n = static_cast<int>(p.data.size());
    const int checks = std::min(n, max_checks_per_tensor);
    for (int c = 0; c < checks; ++c) {
      const int i = (checks == n) ? c : rng.uniform_int(n);
      const double orig = p.data[static_cast<size_t>(i)];
      p.data[static_cast<size_t>(i)] = orig + eps;
      const double lp = loss();
      p.data[static_cast<size_t>(i)] = orig - eps;
      const double lm = loss();
      p.data[static_cast<size_t>(i)] = orig;

      const double numeric = (lp - lm) / (2.0 * eps);
      const double analytic = g.data[static_cast<size_t>(i)];
      const double denom = std::max(1e-8, std::abs(numeric) + std::abs(analytic));
      max_rel = std::max(max_rel, std::abs(numeric - analytic) / denom);
    }
  }
  return max_rel;
}

}  // namespace fruitgrid
