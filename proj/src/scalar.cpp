#include "tensorank/scalar.hpp"

#include <cmath>

namespace tensorank {

// best rational approximation with denominator <= den_bound (continued fractions)
Rational rationalize(double x, unsigned long den_bound) {
    if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
    if (den_bound == 0) den_bound = 1;
    bool neg = x < 0;
    double v = std::fabs(x);
    // convergents p/q of the continued fraction of v
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        mpz_class a(static_cast<unsigned long>(fl));
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > mpz_class(den_bound)) {
            // largest admissible semiconvergent
            mpz_class k = (mpz_class(den_bound) - q0) / q1;
            mpz_class ps = k * p1 + p0, qs = k * q1 + q0;
            if (qs > 0) {
                Rational cand(ps, qs), best(p1, q1);
                cand.canonicalize();
                best.canonicalize();
                double ec = std::fabs(cand.get_d() - v), eb = std::fabs(best.get_d() - v);
                Rational r = (q1 != 0 && eb <= ec) ? best : cand;
                if (neg) r = -r;
                return r;
            }
            break;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rational r(p1, q1 == 0 ? mpz_class(1) : q1);
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

} // namespace tensorank
