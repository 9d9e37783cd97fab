#pragma once

// Pieces of Q shared by the window code and the Abel route.

#include "qtheta/testfn.hpp"

namespace qtheta::detail {

// q(ell) and dq/dP for the point mass at +-ell; R = sqrt(P^2 - tau^2)
struct QTerm {
    double q = 0.0;
    double dq = 0.0;
};
QTerm q_term(double P, double R, double ell, double k, double m);

// int_W^inf e^{-k P' e^-ell} [k C + 2 m S + P' (k S + m C)^2] dw with P' = w^2 + P,
// which majorizes |dq/dP| at P' for every tau
double majorant_tail(double P, double W, double ell, double k, double m);
// sup of majorant_tail(P, 0, ...) over P in [lo, hi]; the function is log-concave in P
double majorant_sup(double lo, double hi, double ell, double k, double m);

// k = 2 pi cos(alpha); m receives 2 pi sin(alpha)
double q_rate(const SpectralWindow& w, double& m);

}  // namespace qtheta::detail
