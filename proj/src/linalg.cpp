#include "jforge/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "jforge/errors.hpp"

namespace jforge::linalg {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> echelon(Matrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Scalar inv = Scalar(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            out(static_cast<long>(i), static_cast<long>(j)) = m[i][j];
    return out;
}

int svd_rank(const Eigen::MatrixXd& m, double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double top = sv(0);
    if (top == 0.0) return 0;
    int r = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * top) ++r;
    return r;
}

}  // namespace

int rank(Matrix m) { return static_cast<int>(echelon(m).size()); }

std::vector<Vector> nullspace(Matrix m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    std::vector<int> pivots = echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<Vector> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        Vector v(cols, Scalar(0));
        v[free_c] = Scalar(1);
        for (size_t k = 0; k < pivots.size(); ++k) {
            size_t pc = static_cast<size_t>(pivots[k]);
            v[pc] = -m[k][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_column_span(const Matrix& m, const Vector& b) {
    if (m.empty()) {
        for (const auto& x : b)
            if (x != 0) return false;
        return true;
    }
    Matrix plain = m;
    Matrix augmented = m;
    for (size_t i = 0; i < m.size(); ++i) augmented[i].push_back(b[i]);
    return rank(std::move(plain)) == rank(std::move(augmented));
}

int rank_double(const std::vector<std::vector<double>>& m, double rel_tol) {
    return svd_rank(to_eigen(m), rel_tol);
}

bool in_column_span_double(const std::vector<std::vector<double>>& m,
                           const std::vector<double>& b, double rel_tol) {
    Eigen::MatrixXd a = to_eigen(m);
    Eigen::MatrixXd aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    for (long i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[static_cast<size_t>(i)];
    return svd_rank(a, rel_tol) == svd_rank(aug, rel_tol);
}

std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& m) {
    Eigen::MatrixXd a = to_eigen(m);
    Eigen::MatrixXd e = a.exp();
    std::vector<std::vector<double>> out(static_cast<size_t>(e.rows()),
                                         std::vector<double>(static_cast<size_t>(e.cols())));
    for (long i = 0; i < e.rows(); ++i)
        for (long j = 0; j < e.cols(); ++j)
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = e(i, j);
    return out;
}

bool is_nilpotent(const Matrix& m) {
    size_t n = m.size();
    Matrix p = m;
    for (size_t k = 0; k < n; ++k) {
        bool zero = true;
        for (const auto& row : p)
            for (const auto& x : row)
                if (x != 0) zero = false;
        if (zero) return true;
        Matrix q(n, Vector(n, Scalar(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t t = 0; t < n; ++t) q[i][j] += p[i][t] * m[t][j];
        p = std::move(q);
    }
    for (const auto& row : p)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

Matrix expm_nilpotent(const Matrix& m, const Scalar& t) {
    if (!is_nilpotent(m))
        throw PreconditionError("exact matrix exponential requires a nilpotent matrix");
    size_t n = m.size();
    Matrix result(n, Vector(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i) result[i][i] = Scalar(1);
    Matrix term = result;
    for (size_t k = 1; k <= n; ++k) {
        Matrix next(n, Vector(n, Scalar(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t s = 0; s < n; ++s) next[i][j] += term[i][s] * m[s][j];
        bool zero = true;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                next[i][j] *= t / Scalar(static_cast<long>(k));
                if (next[i][j] != 0) zero = false;
            }
        if (zero) break;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) result[i][j] += next[i][j];
        term = std::move(next);
    }
    return result;
}

}  // namespace jforge::linalg
