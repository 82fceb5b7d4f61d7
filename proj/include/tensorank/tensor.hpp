#pragma once
#include "tensorank/matrix.hpp"
#include "tensorank/scalar.hpp"
#include "tensorank/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tensorank {

// Dense d-mode tensor, row-major entries with mode 1 slowest.  Immutable by
// convention after construction; all operations below are pure.
template <class S>
struct DenseTensor {
    Shape shape;
    std::vector<S> entries;

    DenseTensor() = default;
    explicit DenseTensor(Shape s) : shape(std::move(s)), entries(shape.num_entries()) {}
    DenseTensor(Shape s, std::vector<S> e) : shape(std::move(s)), entries(std::move(e)) {
        if (static_cast<int64_t>(entries.size()) != shape.num_entries())
            throw std::invalid_argument("DenseTensor: entry count does not match shape");
    }

    S& at(const std::vector<int>& idx) { return entries[ravel(idx, shape)]; }
    const S& at(const std::vector<int>& idx) const { return entries[ravel(idx, shape)]; }
    bool is_zero() const {
        for (const S& v : entries)
            if (!scalar_is_zero(v)) return false;
        return true;
    }
    friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
        return a.shape == b.shape && a.entries == b.entries;
    }
};

template <class S>
struct RankOneTerm {
    S weight;
    std::vector<std::vector<S>> factors; // one vector per mode

    bool is_zero_term() const {
        if (scalar_is_zero(weight)) return true;
        for (const auto& f : factors) {
            bool all0 = true;
            for (const S& v : f)
                if (!scalar_is_zero(v)) { all0 = false; break; }
            if (all0) return true;
        }
        return false;
    }
};

template <class S>
struct Decomposition {
    Shape shape;
    std::vector<RankOneTerm<S>> terms;

    void check() const {
        for (const auto& t : terms) {
            if (static_cast<int>(t.factors.size()) != shape.order())
                throw std::invalid_argument("Decomposition: term mode count mismatch");
            for (int j = 0; j < shape.order(); ++j)
                if (static_cast<int>(t.factors[j].size()) != shape.dims[j])
                    throw std::invalid_argument("Decomposition: factor length mismatch");
        }
    }
    int nonzero_terms() const {
        int k = 0;
        for (const auto& t : terms)
            if (!t.is_zero_term()) ++k;
        return k;
    }
};

// sum_i w_i * (x_{i,1} (x) ... (x) x_{i,d}); exact in, exact out
template <class S>
DenseTensor<S> evaluate(const Decomposition<S>& dec) {
    dec.check();
    DenseTensor<S> out(dec.shape);
    const int d = dec.shape.order();
    std::vector<int> idx;
    for (const auto& t : dec.terms) {
        for (int64_t off = 0; off < dec.shape.num_entries(); ++off) {
            unravel(off, dec.shape, idx);
            S v = t.weight;
            for (int j = 0; j < d; ++j) v = v * t.factors[j][idx[j]];
            out.entries[off] += v;
        }
    }
    return out;
}

// bipartite unfolding: rows run row-major over left modes (ascending mode
// order), columns likewise over the complement; bit-exact layout contract
template <class S>
Mat<S> flatten(const DenseTensor<S>& t, const std::vector<int>& left_modes_1based) {
    const int d = t.shape.order();
    std::vector<bool> in_left(d, false);
    for (int m : left_modes_1based) {
        if (m < 1 || m > d) throw std::invalid_argument("flatten: mode out of range");
        in_left[m - 1] = true;
    }
    int cnt = 0;
    for (bool b : in_left) cnt += b;
    if (cnt == 0 || cnt == d) throw std::invalid_argument("flatten: mode subset must be proper and nonempty");
    int64_t nr = 1, nc = 1;
    for (int j = 0; j < d; ++j) (in_left[j] ? nr : nc) *= t.shape.dims[j];
    Mat<S> m(static_cast<int>(nr), static_cast<int>(nc));
    std::vector<int> idx;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        int64_t r = 0, c = 0;
        for (int j = 0; j < d; ++j) {
            if (in_left[j]) r = r * t.shape.dims[j] + idx[j];
            else c = c * t.shape.dims[j] + idx[j];
        }
        m(static_cast<int>(r), static_cast<int>(c)) = t.entries[off];
    }
    return m;
}

// Kronecker product: mode-j index is the lexicographic pair (T-index, U-index).
// Shorter operand is padded with trailing singleton modes.
template <class S>
DenseTensor<S> kronecker(DenseTensor<S> t, DenseTensor<S> u) {
    while (t.shape.order() < u.shape.order()) t.shape.dims.push_back(1);
    while (u.shape.order() < t.shape.order()) u.shape.dims.push_back(1);
    const int d = t.shape.order();
    std::vector<int> dims(d);
    for (int j = 0; j < d; ++j) dims[j] = t.shape.dims[j] * u.shape.dims[j];
    DenseTensor<S> out{Shape(dims)};
    std::vector<int> ia, ib, ic(d);
    for (int64_t oa = 0; oa < t.shape.num_entries(); ++oa) {
        unravel(oa, t.shape, ia);
        if (scalar_is_zero(t.entries[oa])) continue;
        for (int64_t ob = 0; ob < u.shape.num_entries(); ++ob) {
            unravel(ob, u.shape, ib);
            for (int j = 0; j < d; ++j) ic[j] = ia[j] * u.shape.dims[j] + ib[j];
            out.at(ic) = t.entries[oa] * u.entries[ob];
        }
    }
    return out;
}

// outer product: mode lists concatenate
template <class S>
DenseTensor<S> tensor_product(const DenseTensor<S>& t, const DenseTensor<S>& u) {
    std::vector<int> dims = t.shape.dims;
    dims.insert(dims.end(), u.shape.dims.begin(), u.shape.dims.end());
    DenseTensor<S> out{Shape(dims)};
    int64_t nu = u.shape.num_entries();
    for (int64_t oa = 0; oa < t.shape.num_entries(); ++oa)
        for (int64_t ob = 0; ob < nu; ++ob) out.entries[oa * nu + ob] = t.entries[oa] * u.entries[ob];
    return out;
}

// two diagonal blocks, zeros elsewhere
template <class S>
DenseTensor<S> direct_sum(const DenseTensor<S>& t, const DenseTensor<S>& u) {
    if (t.shape.order() != u.shape.order())
        throw std::invalid_argument("direct_sum: mode counts differ");
    const int d = t.shape.order();
    std::vector<int> dims(d);
    for (int j = 0; j < d; ++j) dims[j] = t.shape.dims[j] + u.shape.dims[j];
    DenseTensor<S> out{Shape(dims)};
    std::vector<int> idx;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        out.at(idx) = t.entries[off];
    }
    for (int64_t off = 0; off < u.shape.num_entries(); ++off) {
        unravel(off, u.shape, idx);
        for (int j = 0; j < d; ++j) idx[j] += t.shape.dims[j];
        out.at(idx) = u.entries[off];
    }
    return out;
}

// contract one mode against y (bilinear, no conjugation); the mode disappears
template <class S>
DenseTensor<S> contract(const DenseTensor<S>& t, int mode_1based, const std::vector<S>& y) {
    const int d = t.shape.order();
    if (mode_1based < 1 || mode_1based > d) throw std::invalid_argument("contract: mode out of range");
    const int m = mode_1based - 1;
    if (static_cast<int>(y.size()) != t.shape.dims[m])
        throw std::invalid_argument("contract: vector length mismatch");
    std::vector<int> dims;
    for (int j = 0; j < d; ++j)
        if (j != m) dims.push_back(t.shape.dims[j]);
    if (dims.empty()) dims.push_back(1);
    DenseTensor<S> out{Shape(dims)};
    std::vector<int> idx, oidx;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        oidx.clear();
        for (int j = 0; j < d; ++j)
            if (j != m) oidx.push_back(idx[j]);
        if (oidx.empty()) oidx.push_back(0);
        out.at(oidx) += t.entries[off] * y[idx[m]];
    }
    return out;
}

// <T,U> = sum T * conj(U)
template <class S>
S inner_product(const DenseTensor<S>& t, const DenseTensor<S>& u) {
    if (t.shape != u.shape) throw std::invalid_argument("inner_product: shape mismatch");
    S acc{};
    for (size_t k = 0; k < t.entries.size(); ++k) acc += t.entries[k] * scalar_conj(u.entries[k]);
    return acc;
}

template <class S>
double frobenius_norm(const DenseTensor<S>& t) {
    double acc = 0;
    for (const S& v : t.entries) acc += scalar_abs2(v);
    return std::sqrt(acc);
}

inline Rational frobenius_sq_exact(const DenseTensor<GaussianRational>& t) {
    Rational acc(0);
    for (const auto& v : t.entries) acc += v.norm2();
    return acc;
}

inline DenseTensor<Complex> to_numeric(const DenseTensor<GaussianRational>& t) {
    DenseTensor<Complex> out(t.shape);
    for (size_t k = 0; k < t.entries.size(); ++k) out.entries[k] = t.entries[k].to_complex();
    return out;
}
inline const DenseTensor<Complex>& to_numeric(const DenseTensor<Complex>& t) { return t; }

inline Decomposition<Complex> to_numeric(const Decomposition<GaussianRational>& d) {
    Decomposition<Complex> out;
    out.shape = d.shape;
    for (const auto& t : d.terms) {
        RankOneTerm<Complex> nt;
        nt.weight = t.weight.to_complex();
        for (const auto& f : t.factors) {
            std::vector<Complex> nf(f.size());
            for (size_t i = 0; i < f.size(); ++i) nf[i] = f[i].to_complex();
            nt.factors.push_back(std::move(nf));
        }
        out.terms.push_back(std::move(nt));
    }
    return out;
}

// slice fixing one mode at a 0-based index
template <class S>
DenseTensor<S> slice_mode(const DenseTensor<S>& t, int mode_1based, int index0) {
    std::vector<S> y(t.shape.dims[mode_1based - 1]);
    y[index0] = S(1);
    return contract(t, mode_1based, y);
}

using QTensor = DenseTensor<GaussianRational>;
using CTensor = DenseTensor<Complex>;

} // namespace tensorank
