#pragma once

// Route-level entry points of the special functions, used by the test-function
// pipeline where each quadrature node picks its own precision.

#include "qtheta/detail/mp.hpp"
#include "qtheta/specfun.hpp"

namespace qtheta::detail {

// natural log of the size of e^{pi|t|/2} K_{it}(x) (an estimate, not a bound)
double k_log_scale(double t, double x);

// e^{pi|t|/2} K_{it}(x) with about `digits` correct digits relative to exp(k_log_scale)
MpReal k_scaled_mp(double t, double x, int digits);
// same with an order that is itself an extended precision quadrature node
MpReal k_scaled_mp(const MpReal& t, double x, int digits);

// double evaluation; err receives the estimated error relative to exp(k_log_scale),
// which is large when the double routes cannot reach full accuracy
double k_scaled_double(double t, double x, double& err);

// Xi_{1/2+it}(u) with about `digits` correct digits relative to max(1, |Xi|)
MpReal xi_mp(double t, double u, int digits);
MpReal xi_mp(const MpReal& t, double u, int digits);
double xi_double(double t, double u, double& err);

MpReal xi_route_mp(double t, double u, XiRoute route, int digits);

}  // namespace qtheta::detail
