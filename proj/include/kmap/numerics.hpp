#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kmap/errors.hpp"

namespace kmap {

// Small dense real matrix, row-major. Just enough linear algebra for the
// circuit solve and the pulse-propagation baseline; nothing sparse, nothing
// iterative.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Max absolute row sum.
    double inf_norm() const {
        double best = 0.0;
        for (int i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
            if (s > best) best = s;
        }
        return best;
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void scale(double c) {
        for (double& v : data_) v *= c;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
        DenseMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                double aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum: dimension mismatch");
        DenseMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix diff: dimension mismatch");
        DenseMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline std::vector<double> operator*(const DenseMatrix& a, const std::vector<double>& x) {
    if (a.cols() != static_cast<int>(x.size())) throw Error("matrix-vector product: dimension mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline double inf_norm(const std::vector<double>& x) {
    double best = 0.0;
    for (double v : x) {
        double a = std::abs(v);
        if (a > best) best = a;
    }
    return best;
}

// y = A^T x without materializing the transpose.
inline std::vector<double> apply_transposed(const DenseMatrix& a, const std::vector<double>& x) {
    if (a.rows() != static_cast<int>(x.size())) throw Error("transposed product: dimension mismatch");
    std::vector<double> y(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double xi = x[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < a.cols(); ++j) y[j] += a(i, j) * xi;
    }
    return y;
}

namespace detail {

// Pivot smaller than this times the matrix norm counts as singular.
inline constexpr double kSingularRelTol = 1e-12;

// In-place Gaussian elimination with partial pivoting on [A | rhs columns].
// rhs is rows x nrhs, row-major. On return rhs holds the solutions.
inline void gauss_solve_inplace(DenseMatrix& a, std::vector<double>& rhs, int nrhs) {
    const int n = a.rows();
    const double threshold = kSingularRelTol * a.inf_norm();
    auto r = [&](int i, int k) -> double& { return rhs[static_cast<std::size_t>(i) * nrhs + k]; };

    for (int c = 0; c < n; ++c) {
        int pivot = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a(i, c)) > std::abs(a(pivot, c))) pivot = i;
        if (std::abs(a(pivot, c)) <= threshold)
            throw SingularMatrixError("singular system: pivot " + std::to_string(a(pivot, c)) +
                                      " at column " + std::to_string(c));
        if (pivot != c) {
            for (int j = c; j < n; ++j) std::swap(a(c, j), a(pivot, j));
            for (int k = 0; k < nrhs; ++k) std::swap(r(c, k), r(pivot, k));
        }
        for (int i = c + 1; i < n; ++i) {
            double m = a(i, c) / a(c, c);
            if (m == 0.0) continue;
            a(i, c) = 0.0;
            for (int j = c + 1; j < n; ++j) a(i, j) -= m * a(c, j);
            for (int k = 0; k < nrhs; ++k) r(i, k) -= m * r(c, k);
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = 0; k < nrhs; ++k) {
            double s = r(i, k);
            for (int j = i + 1; j < n; ++j) s -= a(i, j) * r(j, k);
            r(i, k) = s / a(i, i);
        }
    }
}

}  // namespace detail

// Solve A x = b by Gaussian elimination with partial pivoting.
// Throws SingularMatrixError when a pivot falls below tolerance.
inline std::vector<double> solve_linear(const DenseMatrix& a, const std::vector<double>& b) {
    if (!a.square()) throw Error("solve_linear: matrix not square");
    if (a.rows() != static_cast<int>(b.size())) throw Error("solve_linear: rhs length mismatch");
    DenseMatrix work = a;
    std::vector<double> x = b;
    detail::gauss_solve_inplace(work, x, 1);
    return x;
}

inline DenseMatrix invert(const DenseMatrix& a) {
    if (!a.square()) throw Error("invert: matrix not square");
    const int n = a.rows();
    DenseMatrix work = a;
    std::vector<double> rhs(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i) * n + i] = 1.0;
    detail::gauss_solve_inplace(work, rhs, n);
    DenseMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = rhs[static_cast<std::size_t>(i) * n + j];
    return inv;
}

struct SpectralEstimate {
    double rho = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Spectral-radius upper estimate via the Gelfand sequence ||A^(2^k)||^(1/2^k),
// evaluated by repeated squaring. The iterate is renormalized each squaring and
// the scale carried in log space, so the estimate sequence (monotone
// non-increasing from ||A||) can be followed without overflow.
inline SpectralEstimate spectral_radius(const DenseMatrix& a, double tol = 1e-9, int max_iter = 64) {
    if (!a.square()) throw Error("spectral_radius: matrix not square");
    SpectralEstimate est;
    const double norm0 = a.inf_norm();
    if (norm0 == 0.0 || a.rows() == 0) {
        est.converged = true;
        return est;
    }
    if (!std::isfinite(norm0)) {
        est.rho = std::numeric_limits<double>::infinity();
        return est;
    }
    DenseMatrix c = a;
    c.scale(1.0 / norm0);
    double log_scale = std::log(norm0);
    double power = 1.0;
    est.rho = norm0;
    for (int it = 1; it <= max_iter; ++it) {
        c = c * c;
        const double t = c.inf_norm();
        est.iterations = it;
        if (t == 0.0) {  // nilpotent: A^(2^k) vanished exactly
            est.rho = 0.0;
            est.converged = true;
            return est;
        }
        log_scale = 2.0 * log_scale + std::log(t);
        power *= 2.0;
        c.scale(1.0 / t);
        const double next = std::exp(log_scale / power);
        if (std::abs(next - est.rho) < tol) {
            est.rho = next;
            est.converged = true;
            return est;
        }
        est.rho = next;
    }
    return est;  // not converged; rho is still a valid upper estimate
}

}  // namespace kmap
