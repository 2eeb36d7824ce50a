#include "stegkit/stats.hpp"

#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace stegkit {

double chi2_survival(double x, std::size_t dof) {
  if (dof == 0) {
    throw std::invalid_argument("chi-square needs at least one degree of freedom");
  }
  if (x <= 0.0) {
    return 1.0;
  }
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, x / 2.0);
}

}  // namespace stegkit
