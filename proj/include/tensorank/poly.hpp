#pragma once
#include "tensorank/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tensorank {

// univariate polynomial over the Gaussian rationals, coefficients ascending
struct Poly {
    std::vector<GaussianRational> c;

    Poly() = default;
    Poly(std::initializer_list<GaussianRational> coeffs) : c(coeffs) { trim(); }
    explicit Poly(std::vector<GaussianRational> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(GaussianRational v) { return Poly({std::move(v)}); }
    static Poly x() { return Poly({GaussianRational(0), GaussianRational(1)}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const GaussianRational& lead() const { return c.back(); }
    bool is_constant() const { return c.size() <= 1; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<GaussianRational> r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<GaussianRational> r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<GaussianRational> r(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const GaussianRational& s, const Poly& a) {
        Poly r = a;
        for (auto& v : r.c) v *= s;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    // quotient/remainder, field coefficients
    static std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
        if (den.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly q;
        if (num.degree() >= den.degree()) q.c.assign(num.degree() - den.degree() + 1, GaussianRational(0));
        GaussianRational linv = GaussianRational(1) / den.lead();
        while (!num.is_zero() && num.degree() >= den.degree()) {
            int k = num.degree() - den.degree();
            GaussianRational f = num.lead() * linv;
            q.c[k] = f;
            for (int i = 0; i <= den.degree(); ++i) num.c[k + i] -= f * den.c[i];
            num.trim();
        }
        q.trim();
        return {q, num};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return (GaussianRational(1) / lead()) * *this;
    }
    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<GaussianRational> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = GaussianRational(Rational(static_cast<long>(i))) * c[i];
        return Poly(std::move(r));
    }
    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
    // divisibility over Q(i)[t]
    bool divides(const Poly& other) const { return divmod(other, *this).second.is_zero(); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c[i].str() + ")";
            if (i >= 1) s += "*t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = Poly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// true iff p has a repeated complex root; squarefreeness over Q(i) equals
// squarefreeness over C, so gcd(p, p') decides it exactly
inline bool has_multiple_root(const Poly& p) {
    if (p.degree() < 2) return false;
    return poly_gcd(p, p.derivative()).degree() >= 1;
}

} // namespace tensorank
