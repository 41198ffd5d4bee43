#include "fruitgrid/core/tensor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace fruitgrid {

double Tensor::sum() const {
  return std::accumulate(data.begin(), data.end(), 0.0);
}

bool Tensor::all_finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string shape_str(const std::vector<int>& shape) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << "x";
    os << shape[i];
  }
  os << ")";
  return os.str();
}

}  // namespace fruitgrid
