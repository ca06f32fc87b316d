#include "gld/model.hpp"

#include <stdexcept>
#include <string>

namespace gld {

void ModelParams::validate() const {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("ModelParams: beta must lie in (0,1), got " +
                                std::to_string(beta));
  }
  if (n < 1) {
    throw std::invalid_argument("ModelParams: n must be >= 1, got " +
                                std::to_string(n));
  }
}

double scaling_error(double r, double z, double beta) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("scaling_error: r must be positive");
  }
  if (z == 0.0) {
    throw std::invalid_argument("scaling_error: z must be nonzero");
  }
  const double alpha = (1.0 - beta) / beta;
  const double scaled = std::pow(r, 1.0 + alpha) * z;
  const double lhs = r * V(scaled, beta);
  const double rhs = detail::inv_pow(std::fabs(z), beta);
  return std::fabs(lhs - rhs);
}

}  // namespace gld
