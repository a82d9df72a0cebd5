#pragma once

// Small dense-matrix kernel shared by the embedding and spectral layers:
// storage, products, norms, LU solves and a one-sided Jacobi SVD.  Scalar
// is double or std::complex<double>.  Everything is desk-scale (m <= ~64);
// plain O(m^3) loops are deliberate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "quatlin/errors.hpp"

namespace quatlin {

namespace detail {

inline double conj_scalar(double x) { return x; }
inline std::complex<double> conj_scalar(const std::complex<double>& x) {
    return std::conj(x);
}

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const std::complex<double>& x) { return std::norm(x); }

} // namespace detail

template <class S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, S{}) {}

    // Row-major nested initializer, e.g. {{a,b},{c,d}}.
    DenseMatrix(std::initializer_list<std::initializer_list<S>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw DimensionMismatch("ragged initializer for DenseMatrix");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static DenseMatrix identity(std::size_t m) {
        DenseMatrix a(m, m);
        for (std::size_t i = 0; i < m; ++i) a(i, i) = S{1};
        return a;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMatrix& operator+=(const DenseMatrix& b) {
        check_same_shape(b);
        for (std::size_t t = 0; t < data_.size(); ++t) data_[t] += b.data_[t];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& b) {
        check_same_shape(b);
        for (std::size_t t = 0; t < data_.size(); ++t) data_[t] -= b.data_[t];
        return *this;
    }
    DenseMatrix& operator*=(const S& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, const S& s) { return a *= s; }
    friend DenseMatrix operator*(const S& s, DenseMatrix a) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S aik = a(i, k);
                if (aik == S{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape");
        std::vector<S> w(rows_, S{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) w[i] += (*this)(i, j) * v[j];
        return w;
    }

    DenseMatrix block(std::size_t i0, std::size_t j0, std::size_t m, std::size_t n) const {
        DenseMatrix b(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(std::size_t i0, std::size_t j0, const DenseMatrix& b) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

private:
    void check_same_shape(const DenseMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw DimensionMismatch("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<std::complex<double>>;

template <class S>
DenseMatrix<S> conj_transpose(const DenseMatrix<S>& a) {
    DenseMatrix<S> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = detail::conj_scalar(a(i, j));
    return t;
}

template <class S>
double frobenius_norm(const DenseMatrix<S>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += detail::abs_sq(a(i, j));
    return std::sqrt(s);
}

template <class S>
double max_abs(const DenseMatrix<S>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j)));
    return m;
}

template <class S>
double norm2(const std::vector<S>& v) {
    double s = 0.0;
    for (const auto& x : v) s += detail::abs_sq(x);
    return std::sqrt(s);
}

template <class S>
S trace(const DenseMatrix<S>& a) {
    S t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

// LU factorization with partial pivoting, kept as a combined L\U matrix
// plus the pivot row order.  `singular` flags an exactly zero pivot.
template <class S>
struct LuFactor {
    DenseMatrix<S> lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

// `pivot_floor` > 0 replaces tiny pivots by pivot_floor (preserving phase)
// instead of flagging singularity; inverse iteration relies on this.
template <class S>
LuFactor<S> lu_factor(DenseMatrix<S> a, double pivot_floor = 0.0) {
    const std::size_t m = a.rows();
    if (m != a.cols()) throw DimensionMismatch("lu_factor wants a square matrix");
    LuFactor<S> f;
    f.perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < m; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a(k, j), a(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        S piv = a(k, k);
        if (std::abs(piv) < pivot_floor) {
            piv = (std::abs(piv) == 0.0) ? S{pivot_floor}
                                         : piv * S{pivot_floor / std::abs(piv)};
            a(k, k) = piv;
        }
        if (std::abs(piv) == 0.0) { f.singular = true; continue; }
        for (std::size_t i = k + 1; i < m; ++i) {
            a(i, k) /= piv;
            const S lik = a(i, k);
            if (lik == S{}) continue;
            for (std::size_t j = k + 1; j < m; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

template <class S>
std::vector<S> lu_solve(const LuFactor<S>& f, const std::vector<S>& b) {
    const std::size_t m = f.lu.rows();
    if (b.size() != m) throw DimensionMismatch("lu_solve rhs size");
    std::vector<S> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t j = i + 1; j < m; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

template <class S>
S determinant(const DenseMatrix<S>& a) {
    auto f = lu_factor(a);
    if (f.singular) return S{};
    S d = S{1} * static_cast<double>(f.sign);
    for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

template <class S>
DenseMatrix<S> inverse(const DenseMatrix<S>& a) {
    const std::size_t m = a.rows();
    auto f = lu_factor(a);
    if (f.singular) throw Error("inverse of a singular matrix");
    DenseMatrix<S> inv(m, m);
    std::vector<S> e(m, S{});
    for (std::size_t j = 0; j < m; ++j) {
        e[j] = S{1};
        auto col = lu_solve(f, e);
        for (std::size_t i = 0; i < m; ++i) inv(i, j) = col[i];
        e[j] = S{};
    }
    return inv;
}

// Singular values by one-sided Jacobi on columns, descending.  Adequate at
// the sizes used for rank staircases; it avoids forming A^H A explicitly.
template <class S>
std::vector<double> singular_values(const DenseMatrix<S>& a0) {
    DenseMatrix<S> a = a0;
    const std::size_t m = a.rows(), n = a.cols();
    const double eps = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                S gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += detail::abs_sq(a(i, p));
                    beta += detail::abs_sq(a(i, q));
                    gamma += detail::conj_scalar(a(i, p)) * a(i, q);
                }
                const double g = std::abs(gamma);
                if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                // Rotate the q column's phase so the Gram entry is real,
                // then apply a real Jacobi rotation.
                const S phase = gamma * S{1.0 / g};
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const S vp = a(i, p);
                    const S vq = a(i, q) * detail::conj_scalar(phase);
                    a(i, p) = vp * c - vq * s;
                    a(i, q) = (vp * s + vq * c) * phase;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += detail::abs_sq(a(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

// Number of singular values above tol * sigma_max.
template <class S>
std::size_t numerical_rank(const DenseMatrix<S>& a, double tol = 1e-9) {
    const auto sv = singular_values(a);
    if (sv.empty() || sv[0] == 0.0) return 0;
    const double thresh = tol * sv[0];
    std::size_t r = 0;
    while (r < sv.size() && sv[r] > thresh) ++r;
    return r;
}

inline ComplexMatrix complexify(const RealMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    return c;
}

} // namespace quatlin
