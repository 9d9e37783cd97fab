#include <cmath>
#include <stdexcept>

#include "qtheta/specfun.hpp"

namespace qtheta {

// Q(s, x) = e^-x sum_{k<s} x^k / k!  for integer s
double incomplete_gamma_Q(int s, double x)
{
    if (s < 1 || s > 3)
        throw std::invalid_argument("incomplete gamma: s must be 1, 2 or 3");
    if (!(x >= 0.0))
        throw std::invalid_argument("incomplete gamma: x must be nonnegative");
    if (std::isinf(x))
        return 0.0;
    double poly = 1.0, term = 1.0;
    for (int k = 1; k < s; ++k) {
        term *= x / k;
        poly += term;
    }
    return poly * std::exp(-x);
}

}  // namespace qtheta
