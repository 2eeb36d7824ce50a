#pragma once

#include <cstddef>

namespace stegkit {

/// Survival function P(X >= x) of the chi-square distribution with `dof`
/// degrees of freedom.
double chi2_survival(double x, std::size_t dof);

}  // namespace stegkit
