#include "qtheta/detail/mp.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <boost/multiprecision/gmp.hpp>

#include "qtheta/specfun.hpp"

namespace qtheta {

void Precision::validate() const
{
    if (working_digits < 16)
        throw std::invalid_argument("precision: working_digits must be at least 16");
    if (!(rel_tol > 0.0) || rel_tol < std::pow(10.0, -working_digits + 8))
        throw std::invalid_argument("precision: rel_tol must be >= 10^(8 - working_digits)");
    if (!(abs_floor >= 0.0))
        throw std::invalid_argument("precision: abs_floor must be nonnegative");
}

namespace detail {

namespace {

using Rat = boost::multiprecision::mpq_rational;

// B_0, B_2, B_4, ... exact; grown on demand
class BernoulliTable {
public:
    const Rat& b2k(int k)
    {
        std::lock_guard lock(mu_);
        grow(k);
        return even_[static_cast<std::size_t>(k)];
    }

private:
    void grow(int k)
    {
        const int need = 2 * k;
        while (static_cast<int>(all_.size()) <= need) {
            // sum_{j=0}^{n} C(n+1, j) B_j = 0
            const int n = static_cast<int>(all_.size());
            if (n == 0) {
                all_.push_back(Rat(1));
                continue;
            }
            Rat s = 0;
            boost::multiprecision::mpz_int binom = 1;  // C(n+1, j)
            for (int j = 0; j < n; ++j) {
                if (all_[static_cast<std::size_t>(j)] != 0)
                    s += Rat(binom) * all_[static_cast<std::size_t>(j)];
                binom = binom * (n + 1 - j) / (j + 1);
            }
            all_.push_back(-s / Rat(n + 1));
        }
        for (auto i = even_.size(); 2 * i < all_.size(); ++i) even_.push_back(all_[2 * i]);
    }

    std::mutex mu_;
    std::vector<Rat> all_;
    std::vector<Rat> even_;
};

BernoulliTable& bernoulli_table()
{
    static BernoulliTable t;
    return t;
}

}  // namespace

double Num<double>::bernoulli_2k(int k) const
{
    static const std::vector<double> cache = [] {
        std::vector<double> v;
        for (int i = 0; i <= 60; ++i) v.push_back(bernoulli_table().b2k(i).convert_to<double>());
        return v;
    }();
    if (k <= 60)
        return cache[static_cast<std::size_t>(k)];
    return bernoulli_table().b2k(k).convert_to<double>();
}

MpReal Num<MpReal>::pi() const
{
    return 4 * atan(MpReal(1, static_cast<unsigned>(digits10)));
}

MpReal Num<MpReal>::bernoulli_2k(int k) const
{
    const Rat& q = bernoulli_table().b2k(k);
    // converting through the constructor would round at the default precision
    MpReal out(0, static_cast<unsigned>(digits10));
    mpfr_set_q(out.backend().data(), q.backend().data(), MPFR_RNDN);
    return out;
}

}  // namespace detail
}  // namespace qtheta
