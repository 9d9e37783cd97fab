#include "qtheta/algebra.hpp"

#include <stdexcept>

namespace qtheta {

LatticeSpec::LatticeSpec(std::int64_t N_, std::int64_t ell_, GroupElement g_) : N(N_), ell(ell_), g(g_)
{
    if (!is_squarefree(N))
        throw std::invalid_argument("lattice level N must be squarefree");
    if (ell < 1 || N % ell != 0)
        throw std::invalid_argument("ell must be a positive divisor of N");
}

TailoredMatrix LatticeSpec::element(const std::array<std::int64_t, 4>& k) const
{
    return TailoredMatrix::from_entries(Rational(k[0]), Rational(k[1], ell), Rational(k[2] * (N / ell)),
                                        Rational(k[3]));
}

std::int64_t LatticeSpec::det_key(const std::array<std::int64_t, 4>& k) const
{
    return ell * k[0] * k[3] - (N / ell) * k[1] * k[2];
}

namespace {

RealMatrix conjugate(const GroupElement& g, const RealMatrix& m)
{
    const RealMatrix gi = g.inverse();
    const RealMatrix& ge = g.entries();
    const RealMatrix t{gi[0] * m[0] + gi[1] * m[2], gi[0] * m[1] + gi[1] * m[3],
                       gi[2] * m[0] + gi[3] * m[2], gi[2] * m[1] + gi[3] * m[3]};
    return {t[0] * ge[0] + t[1] * ge[2], t[0] * ge[1] + t[1] * ge[3], t[2] * ge[0] + t[3] * ge[2],
            t[2] * ge[1] + t[3] * ge[3]};
}

Rational det4(std::array<std::array<Rational, 4>, 4> a)
{
    Rational det(1);
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (a[r][c] != Rational(0)) { piv = r; break; }
        if (piv < 0)
            return Rational(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const Rational f = a[r][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

}  // namespace

LatticeBasis lattice_basis(const LatticeSpec& spec)
{
    LatticeBasis out;
    std::array<RealMatrix, 4> conj;
    std::array<std::array<Rational, 4>, 4> coords;
    for (int i = 0; i < 4; ++i) {
        std::array<std::int64_t, 4> k{0, 0, 0, 0};
        k[i] = 1;
        out.basis[i] = spec.element(k);
        const auto& e = out.basis[i].entries();
        coords[i] = e;
        conj[i] = conjugate(spec.g, {to_double(e[0]), to_double(e[1]), to_double(e[2]), to_double(e[3])});
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int e = 0; e < 4; ++e) s += conj[i][e] * conj[j][e];
            out.gram[i][j] = 0.5 * s;
        }
    out.covolume = boost::abs(det4(coords));
    return out;
}

}  // namespace qtheta
