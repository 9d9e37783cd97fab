#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtheta/algebra.hpp"
#include "qtheta/counting.hpp"
#include "qtheta/report.hpp"
#include "qtheta/testfn.hpp"

namespace qtheta {

struct ThetaConfig {
    LatticeSpec spec;
    SpectralWindow window = SpectralWindow::unit(0.0);
    double tol = 1e-10;      // relative to max(|value|, abs_floor)
    double abs_floor = 1e-30;
    double p_cut = 4.0;      // first truncation in the scaled P; doubled until certified
    int max_doublings = 16;
    Precision phi_prec{};
    EnumerationBudget budget{};
};

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ThetaValue {
    std::complex<double> value;
    std::complex<double> det_zero;  // share of the det = 0 terms (evaluated at the tau floor)
    double p_cut = 0.0;             // terms with scaled P above this were left out
    double tail_bound = 0.0;
    double doubling_change = 0.0;   // |value(p_cut) - value(p_cut / 2)|
    std::size_t terms = 0;
};

ThetaValue theta_eval(const ThetaConfig& cfg, const HalfPlanePoint& z);

struct L2Value {
    double value = 0.0;
    double det_zero = 0.0;  // |class sum|^2 of the det = 0 class
    double p_cut = 0.0;
    double error_bound = 0.0;
    double doubling_change = 0.0;
    std::size_t classes = 0;
    std::size_t terms = 0;
};

// sum over det classes n of |sum_{gamma != 0, det gamma = n} Phi(y^1/2 g^-1 gamma g)|^2
L2Value l2_integrand(const ThetaConfig& cfg, double y);

// bound on sum_{P(y^1/2 gamma') > p_scan} |Phi|, from the Phi envelope and a lattice point count
double theta_tail_bound(const ThetaConfig& cfg, double p_scan, double y);

struct FourthMomentOptions {
    double L_factor = 2.0;      // L runs over powers of two up to L_factor sqrt(N T) / ell
    double delta_factor = 1.0;  // delta = 4^-j down to delta_factor / T^2
    double heart_factor = 1.0;  // heart = delta 2^-j down to heart_factor delta^1/2 / T
    int max_L_steps = 5;
    int max_delta_steps = 4;
    int max_heart_steps = 6;
    EnumerationBudget budget{};
};

// rows (ell, L, delta, heart, g) with count = ordered det-equal pairs in the union
// region under the heart window, rhs = ell L^2 heart, ratio = count / rhs
CountReport geometric_fourth_moment_bound(const GroupElement& g1, const GroupElement& g2, std::int64_t N, double T,
                                          const FourthMomentOptions& opts = {});

}  // namespace qtheta
