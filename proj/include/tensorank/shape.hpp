#pragma once
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorank {

// Mode sizes n = (n_1,...,n_d), all >= 1.  N(n) is the entry count,
// M(n) = 1 - d + sum n_j the dimension of the rank-one (Segre) cone.
struct Shape {
    std::vector<int> dims;

    Shape() = default;
    Shape(std::initializer_list<int> d) : dims(d) { validate(); }
    explicit Shape(std::vector<int> d) : dims(std::move(d)) { validate(); }

    void validate() const {
        if (dims.empty()) throw std::invalid_argument("Shape: needs at least one mode");
        for (int n : dims)
            if (n < 1) throw std::invalid_argument("Shape: all mode sizes must be >= 1");
    }

    int order() const { return static_cast<int>(dims.size()); }
    int64_t num_entries() const {
        int64_t n = 1;
        for (int d : dims) n *= d;
        return n;
    }
    int64_t segre_dim() const {
        int64_t s = 1 - order();
        for (int d : dims) s += d;
        return s;
    }
    // shape with singleton modes removed (empty becomes (1))
    Shape squeezed() const {
        std::vector<int> d;
        for (int n : dims)
            if (n > 1) d.push_back(n);
        if (d.empty()) d.push_back(1);
        return Shape(d);
    }
    std::string str() const {
        std::string s;
        for (size_t i = 0; i < dims.size(); ++i) {
            if (i) s += "x";
            s += std::to_string(dims[i]);
        }
        return s;
    }
    friend bool operator==(const Shape& a, const Shape& b) { return a.dims == b.dims; }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
};

// row-major strides, mode 1 slowest
inline std::vector<int64_t> strides_of(const Shape& s) {
    std::vector<int64_t> st(s.dims.size());
    int64_t acc = 1;
    for (int j = s.order() - 1; j >= 0; --j) {
        st[j] = acc;
        acc *= s.dims[j];
    }
    return st;
}

// multi-index (0-based) from flat offset
inline void unravel(int64_t off, const Shape& s, std::vector<int>& idx) {
    idx.resize(s.dims.size());
    for (int j = s.order() - 1; j >= 0; --j) {
        idx[j] = static_cast<int>(off % s.dims[j]);
        off /= s.dims[j];
    }
}

inline int64_t ravel(const std::vector<int>& idx, const Shape& s) {
    int64_t off = 0;
    for (int j = 0; j < s.order(); ++j) off = off * s.dims[j] + idx[j];
    return off;
}

} // namespace tensorank
