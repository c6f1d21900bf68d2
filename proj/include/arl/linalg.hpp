#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arl {

/// Small dense column-major matrix, just large enough for the d x d
/// determinant and membership solves used throughout.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return a_[c * rows_ + r]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[c * rows_ + r]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set_col(std::size_t c, const std::vector<double>& v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

struct DetResult {
    double value = 0.0;
    /// |det| below 1e-12 * product of column norms: cancellation cannot be
    /// distinguished from a true zero at this precision.
    bool numerically_degenerate = false;
    double column_norm_product = 0.0;
};

/// Determinant by partially pivoted elimination.
inline DetResult det_pivoted(Matrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("det: matrix not square");
    DetResult out;
    out.column_norm_product = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += m(r, c) * m(r, c);
        out.column_norm_product *= std::sqrt(s);
    }
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
        if (m(piv, k) == 0.0) {
            out.value = 0.0;
            out.numerically_degenerate = true;
            return out;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(k, c));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            double f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    out.value = det;
    out.numerically_degenerate = std::abs(det) < 1e-12 * out.column_norm_product;
    return out;
}

/// Solves m x = b by partially pivoted elimination (m consumed by value).
inline std::vector<double> solve(Matrix m, std::vector<double> b) {
    const std::size_t n = m.rows();
    if (n != m.cols() || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
        if (m(piv, k) == 0.0) throw std::domain_error("solve: singular matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(k, c));
            std::swap(b[piv], b[k]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            double f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= m(k, c) * x[c];
        x[k] = s / m(k, k);
    }
    return x;
}

/// Vandermonde product prod_{i<j} (t_j - t_i).
inline double vandermonde(const std::vector<double>& t) {
    double v = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) v *= t[j] - t[i];
    return v;
}

}  // namespace arl
