#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtheta/algebra.hpp"
#include "qtheta/counting.hpp"
#include "qtheta/report.hpp"

namespace qtheta {

enum class Proposition { OmegaProp, PsiProp, TraceFreeProp, HeartConjecture, UpperTriangular };

std::string to_string(Proposition p);
Proposition proposition_from_string(const std::string& s);

struct BoundInputs {
    double N = 1.0;
    double ell = 1.0;
    double H = 1.0;  // height of g i
    double delta = 1.0;
    double L = 1.0;
    double heart = 0.0;
};

// right-hand sides with epsilon = 0 and d_B = 1
double bound_rhs(Proposition p, const BoundInputs& in);

// K = min{ell^-1/2, ell^-1 H^-1 delta^-1/2}: the emptiness scale
double emptiness_scale(double ell, double H, double delta);

enum class EllChoice { OneAndN, AllDivisors };

struct NamedG {
    std::string name;
    GroupElement g;
};

struct BoundGrid {
    std::vector<std::int64_t> Ns;
    EllChoice ells = EllChoice::OneAndN;
    std::vector<double> Ls;
    std::vector<double> deltas;
    std::vector<double> heart_factors;  // heart = factor * delta (Conjecture / upper-triangular)
    std::vector<NamedG> gs;
};

BoundGrid default_prop_grid(std::int64_t n_max);   // acceptance sweep grid
BoundGrid default_heart_grid(std::int64_t n_max);  // Conjecture scan grid
std::vector<std::int64_t> squarefree_upto(std::int64_t n_max);

struct VerifyOptions {
    double constant = 0.0;  // flag threshold; 0 means "use the frozen constant"
    EnumerationBudget budget{};
    int jobs = 1;
};

CountReport verify_bound(Proposition p, const BoundGrid& grid, const VerifyOptions& opts = {});

}  // namespace qtheta
