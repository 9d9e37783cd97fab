#include "qtheta/algebra.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtheta {

namespace {

// returns (g, u, v) with u*a + v*b = g
std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b)
{
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

}  // namespace

// Im of any element of A_0(N) applied to z only depends on its bottom row
// (N c, Q d), Q | N, with gcd(Q d, (N/Q) c) = 1: Im = Q y / |N c z + Q d|^2.
// The maximum is found by enumerating every admissible bottom row that could
// beat the current best, so the result is a certified global maximum.
HeightResult height(const HalfPlanePoint& z, std::int64_t N)
{
    if (!is_squarefree(N))
        throw std::invalid_argument("height: N must be squarefree");
    HeightResult best;
    best.H = z.y;
    best.image = z;
    std::int64_t best_c = 0, best_d = 1;
    const double Nd = static_cast<double>(N);

    for (const std::int64_t Q : divisors(N)) {
        const double Qd = static_cast<double>(Q);
        const double B2 = Qd * z.y / best.H;
        const auto cmax = static_cast<std::int64_t>(std::floor(std::sqrt(B2) / (Nd * z.y)));
        for (std::int64_t c = 0; c <= cmax; ++c) {
            const double ncy = Nd * static_cast<double>(c) * z.y;
            const double bound = Qd * z.y / best.H;
            const double rem = bound - ncy * ncy;
            if (rem <= 0.0)
                continue;
            const double r = std::sqrt(rem);
            const double ncx = Nd * static_cast<double>(c) * z.x;
            auto dlo = static_cast<std::int64_t>(std::ceil((-ncx - r) / Qd));
            const auto dhi = static_cast<std::int64_t>(std::floor((-ncx + r) / Qd));
            if (c == 0)
                dlo = std::max<std::int64_t>(dlo, 1);
            for (std::int64_t d = dlo; d <= dhi; ++d) {
                if (std::gcd(Q * d, (N / Q) * c) != 1)
                    continue;
                const double re = ncx + Qd * static_cast<double>(d);
                const double den = re * re + ncy * ncy;
                const double im = Qd * z.y / den;
                if (im > best.H * (1.0 + 4e-15)) {
                    best.H = im;
                    best.Q = Q;
                    best_c = c;
                    best_d = d;
                }
            }
        }
    }

    const std::int64_t Q = best.Q;
    const auto [g, u, v] = ext_gcd(Q * best_d, (N / Q) * best_c);
    if (g != 1)
        throw std::logic_error("height: inadmissible bottom row");
    // a (Q d) - b ((N/Q) c) = 1
    best.witness = {Q * u, -v, N * best_c, Q * best_d};
    const RealMatrix w{static_cast<double>(best.witness[0]), static_cast<double>(best.witness[1]),
                       static_cast<double>(best.witness[2]), static_cast<double>(best.witness[3])};
    best.image = mobius(w, z);
    // translate the image into [-1/2, 1/2)
    const double shift = std::floor(best.image.x + 0.5);
    if (shift != 0.0) {
        const auto s = static_cast<std::int64_t>(shift);
        best.witness[0] -= s * best.witness[2];
        best.witness[1] -= s * best.witness[3];
        best.image.x -= shift;
    }
    best.H = best.image.y;
    return best;
}

}  // namespace qtheta
