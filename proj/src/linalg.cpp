#include "kn/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kn {

Cplx hermitian_inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw DimensionError("hermitian_inner: dimension mismatch");
    return v.dot(u); // Eigen conjugates the left factor of dot()
}

double symplectic_form(const Vec& u, const Vec& v) {
    return hermitian_inner(u, v).imag();
}

Mat matrix_exp(const Mat& a) {
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exp: matrix not square");
    const Eigen::Index n = a.rows();
    if (n == 0) return Mat(0, 0);

    double norm = a.cwiseAbs().rowwise().sum().maxCoeff(); // infinity norm
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        squarings = std::min(squarings, 64);
    }
    Mat b = a / std::pow(2.0, squarings);

    // Taylor series on the scaled matrix; ||b|| <= 1/2 so this converges fast.
    Mat term = Mat::Identity(n, n);
    Mat sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.norm() < 1e-20 * std::max(1.0, sum.norm())) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

bool is_skew_hermitian(const Mat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a.adjoint() + a).cwiseAbs().maxCoeff() <= tol * scale;
}

int rank_floating(const Mat& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

int rank_floating_real(const RMat& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<RMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

int subspace_dimension(const std::vector<Vec>& vectors, double tol) {
    if (vectors.empty()) return 0;
    const Eigen::Index n = vectors.front().size();
    Mat m(n, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n)
            throw DimensionError("subspace_dimension: mixed vector dimensions");
        m.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return rank_floating(m, tol);
}

int subspace_dimension_real(const std::vector<RVec>& vectors, double tol) {
    if (vectors.empty()) return 0;
    const Eigen::Index n = vectors.front().size();
    RMat m(n, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n)
            throw DimensionError("subspace_dimension: mixed vector dimensions");
        m.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return rank_floating_real(m, tol);
}

int subspace_dimension_exact(const std::vector<ExactVector>& vectors) {
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().size();
    // rows = vectors, fraction-free elimination over Q(i)
    std::vector<ExactVector> rows;
    for (const auto& v : vectors) {
        if (v.size() != n)
            throw DimensionError("subspace_dimension: mixed vector dimensions");
        rows.push_back(v);
    }
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < rows.size() && col < n; ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t k = r + 1; k < rows.size(); ++k) {
            if (rows[k][col].is_zero()) continue;
            GaussianRational factor = rows[k][col] / rows[r][col];
            for (std::size_t j = col; j < n; ++j)
                rows[k][j] = rows[k][j] - factor * rows[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

Mat kernel_basis(const Mat& m, double tol) {
    if (m.cols() == 0) return Mat(0, 0);
    if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (top > 0.0 && sv(i) > tol * top) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

RMat kernel_basis_real(const RMat& m, double tol) {
    if (m.cols() == 0) return RMat(0, 0);
    if (m.rows() == 0) return RMat::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (top > 0.0 && sv(i) > tol * top) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

Vec exact_to_floating(const ExactVector& v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i].to_complex();
    return out;
}

} // namespace kn
