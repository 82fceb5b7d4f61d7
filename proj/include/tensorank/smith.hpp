#pragma once
#include "tensorank/matrix.hpp"
#include "tensorank/poly.hpp"

#include <vector>

namespace tensorank {

using PolyMat = Mat<Poly>;

// Smith normal form over Q(i)[t] for a possibly rectangular polynomial
// matrix.  Returns the monic invariant factors s_1 | s_2 | ... | s_rho
// (nontrivial ones may include constants = 1 entries for rho slots).
inline std::vector<Poly> smith_invariant_factors(PolyMat m) {
    const int rows = m.rows, cols = m.cols;
    std::vector<Poly> factors;
    int p = 0;
    while (p < rows && p < cols) {
        // locate a nonzero entry of minimal degree in the trailing block
        int bi = -1, bj = -1, bdeg = -1;
        for (int i = p; i < rows; ++i)
            for (int j = p; j < cols; ++j) {
                if (m(i, j).is_zero()) continue;
                int d = m(i, j).degree();
                if (bdeg < 0 || d < bdeg) { bdeg = d; bi = i; bj = j; }
            }
        if (bi < 0) break; // trailing block is zero
        for (;;) {
            // move minimal entry to the pivot
            if (bi != p)
                for (int j = 0; j < cols; ++j) std::swap(m(p, j), m(bi, j));
            if (bj != p)
                for (int i = 0; i < rows; ++i) std::swap(m(i, p), m(i, bj));
            // clear column and row by division; a nonzero remainder becomes
            // the new (smaller-degree) pivot candidate
            bool reduced = true;
            for (int i = p + 1; i < rows && reduced; ++i) {
                if (m(i, p).is_zero()) continue;
                auto [q, r] = Poly::divmod(m(i, p), m(p, p));
                for (int j = 0; j < cols; ++j) m(i, j) = m(i, j) - q * m(p, j);
                if (!r.is_zero()) { bi = i; bj = p; reduced = false; }
            }
            if (!reduced) continue;
            for (int j = p + 1; j < cols && reduced; ++j) {
                if (m(p, j).is_zero()) continue;
                auto [q, r] = Poly::divmod(m(p, j), m(p, p));
                for (int i = 0; i < rows; ++i) m(i, j) = m(i, j) - q * m(i, p);
                if (!r.is_zero()) { bi = p; bj = j; reduced = false; }
            }
            if (!reduced) continue;
            // pivot must divide every remaining entry
            bool fixed = false;
            for (int i = p + 1; i < rows && !fixed; ++i)
                for (int j = p + 1; j < cols && !fixed; ++j) {
                    if (m(i, j).is_zero()) continue;
                    if (!Poly::divmod(m(i, j), m(p, p)).second.is_zero()) {
                        for (int jj = 0; jj < cols; ++jj) m(p, jj) = m(p, jj) + m(i, jj);
                        bi = p;
                        bj = p;
                        // re-scan pivot row for the minimal-degree entry
                        for (int jj = p; jj < cols; ++jj)
                            if (!m(p, jj).is_zero() &&
                                (m(p, bj).is_zero() || m(p, jj).degree() < m(p, bj).degree()))
                                bj = jj;
                        fixed = true;
                    }
                }
            if (fixed) continue;
            break;
        }
        factors.push_back(m(p, p).monic());
        ++p;
    }
    return factors;
}

} // namespace tensorank
