#pragma once

#include "fruitgrid/core/rng.hpp"
#include "fruitgrid/nn/network.hpp"

namespace fruitgrid {

// Central finite differences of a fixed random linear functional of the
// Q-values against the analytic gradients, over a subsample of parameters
// per tensor. Returns the maximum relative discrepancy.
double gradient_check(QNetwork& net, const Tensor& main_in, const Tensor* side_in, Rng& rng,
                      int max_checks_per_tensor = 40, double eps = 1e-4);

}  // namespace fruitgrid
