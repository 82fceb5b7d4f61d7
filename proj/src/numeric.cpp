#include "tensorank/matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace tensorank {

namespace {
Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
    return e;
}
} // namespace

std::vector<double> singular_values(const Mat<Complex>& m) {
    if (m.rows == 0 || m.cols == 0) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

int numeric_rank(const Mat<Complex>& m, double tol) {
    auto sv = singular_values(m);
    if (sv.empty()) return 0;
    double smax = sv.front();
    if (smax == 0.0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > tol * smax) ++r;
    return r;
}

double sigma_max(const Mat<Complex>& m) {
    auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

double trace_norm(const Mat<Complex>& m) {
    double acc = 0;
    for (double s : singular_values(m)) acc += s;
    return acc;
}

} // namespace tensorank
