#pragma once
#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tensorank {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Exact scalar backend: a + b*i with a, b arbitrary-precision rationals.
// Closed under +,-,*,/ (nonzero divisor); comparisons are exact.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational from_ratio(long rn, long rd, long in_ = 0, long id = 1) {
        Rational r(rn, rd), i(in_, id);
        r.canonicalize();
        i.canonicalize();
        return {r, i};
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; } // |z|^2

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n2 = b.norm2();
        if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    Complex to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string str() const {
        if (im == 0) return re.get_str();
        return re.get_str() + (im > 0 ? "+" : "") + im.get_str() + "i";
    }
};

// Unified hooks used by the templated tensor/matrix code.
inline GaussianRational scalar_conj(const GaussianRational& z) { return z.conj(); }
inline Complex scalar_conj(const Complex& z) { return std::conj(z); }
inline bool scalar_is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool scalar_is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline double scalar_abs2(const GaussianRational& z) { return z.norm2().get_d(); }
inline double scalar_abs2(const Complex& z) { return std::norm(z); }
inline Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
inline Complex to_complex(const Complex& z) { return z; }

// continued-fraction rationalization with a denominator bound, used when exact
// modules ingest floating input
Rational rationalize(double x, unsigned long den_bound);

} // namespace tensorank
