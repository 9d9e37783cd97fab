#pragma once

// Frozen constants. Version 1.
//
// Each value was produced by `qtheta fit` (src/acceptance.cpp, fit_constants) and is
// the sweep maximum times the stated safety factor, rounded up. Regenerate with
//   build/qtheta fit
// and bump the version when any value changes.

namespace qtheta::frozen {

inline constexpr int kVersion = 1;

// counting propositions; sweep: squarefree N <= 6, ell in {1, N}, L = 1..16,
// delta in {1, 1/4, 1/16}, g in {I, diag(2, 1/2)}; factor 2
inline constexpr double kOmegaProp = 2110.0;
inline constexpr double kPsiProp = 458.0;
// trace-free Psi point count, same sweep; factor 2
inline constexpr double kTraceFreeProp = 19.7;
// Conjecture scan threshold (report only); sweep: Conjecture grid, N <= 6; factor 2
inline constexpr double kHeartConjecture = 1310.0;
// upper-triangular contribution bound, same grid as the Conjecture scan; factor 2
inline constexpr double kUpperTriangular = 1600.0;

// emptiness: c * min{ell^-1/2, ell^-1 H^-1 delta^-1/2} <= lambda_1 on the sweep
// (minimum of lambda_1 / K over N <= 6, times 1/2)
inline constexpr double kEmptiness = 0.25;
// trace-free lambda_1 >= c * K (minimum over N <= 6, times 1/2)
inline constexpr double kTraceFreeLambda1 = 0.25;

// Appendix envelopes; sweep: verify_appendix_bounds default grid; factor 2
inline constexpr double kBesselEnvelope = 3.74;
inline constexpr double kXiEnvelope = 2.0;

// decay |Q(P;tau)| <= C (1+P)^-6 and |Phi| <= C (1+P)^-6; sweep: decay_sweep; factor 2
inline constexpr double kQDecay = 3300.0;
inline constexpr double kPhiDecay = 15900.0;

}  // namespace qtheta::frozen
