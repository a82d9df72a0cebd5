#pragma once

// Quaternionic vectors and the three operator families acting on them:
//   MatrixH            left matrix action, linear under right-H scaling
//   MatrixC = m0+m1*Ri linear under right-complex scaling
//   MatrixR = sum mu*Rmu  linear under right-real scaling only
// Right operators compose in reversed quaternion order (Ri Rj = -Rk).

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "quatlin/errors.hpp"
#include "quatlin/quaternion.hpp"

namespace quatlin {

class VectorH {
public:
    VectorH() = default;
    explicit VectorH(std::size_t n) : entries_(n) {}
    VectorH(std::initializer_list<Quaternion> xs) : entries_(xs) {}

    std::size_t size() const { return entries_.size(); }
    Quaternion& operator[](std::size_t i) { return entries_[i]; }
    const Quaternion& operator[](std::size_t i) const { return entries_[i]; }

    VectorH& operator+=(const VectorH& b) {
        check(b);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] += b[i];
        return *this;
    }
    VectorH& operator-=(const VectorH& b) {
        check(b);
        for (std::size_t i = 0; i < size(); ++i) entries_[i] -= b[i];
        return *this;
    }

private:
    void check(const VectorH& b) const {
        if (size() != b.size()) throw DimensionMismatch("vector sizes differ");
    }
    std::vector<Quaternion> entries_;
};

inline VectorH operator+(VectorH a, const VectorH& b) { return a += b; }
inline VectorH operator-(VectorH a, const VectorH& b) { return a -= b; }

// Scalar acting from the right, the side on which the structure lives.
inline VectorH operator*(const VectorH& v, const Quaternion& q) {
    VectorH w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * q;
    return w;
}
inline VectorH operator*(const VectorH& v, double s) {
    return v * Quaternion{s};
}
inline VectorH operator*(const VectorH& v, const Complex& z) {
    return v * from_complex(z);
}

inline double norm(const VectorH& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += norm_sq(v[i]);
    return std::sqrt(s);
}

// Quaternion-valued inner product, conjugate-linear in the first slot:
// <u, v q> = <u, v> q.
inline Quaternion dot(const VectorH& u, const VectorH& v) {
    if (u.size() != v.size()) throw DimensionMismatch("dot sizes differ");
    Quaternion s;
    for (std::size_t i = 0; i < u.size(); ++i) s += conj(u[i]) * v[i];
    return s;
}

class MatrixH {
public:
    MatrixH() = default;
    explicit MatrixH(std::size_t n) : n_(n), entries_(n * n) {}
    MatrixH(std::initializer_list<std::initializer_list<Quaternion>> rows) {
        n_ = rows.size();
        entries_.reserve(n_ * n_);
        for (const auto& r : rows) {
            if (r.size() != n_) throw DimensionMismatch("MatrixH must be square");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static MatrixH identity(std::size_t n) {
        MatrixH m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion{1.0};
        return m;
    }

    std::size_t n() const { return n_; }
    Quaternion& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * n_ + j];
    }

    MatrixH& operator+=(const MatrixH& b) {
        check(b);
        for (std::size_t t = 0; t < entries_.size(); ++t) entries_[t] += b.entries_[t];
        return *this;
    }
    MatrixH& operator-=(const MatrixH& b) {
        check(b);
        for (std::size_t t = 0; t < entries_.size(); ++t) entries_[t] -= b.entries_[t];
        return *this;
    }
    MatrixH& operator*=(double s) {
        for (auto& q : entries_) q *= s;
        return *this;
    }

private:
    void check(const MatrixH& b) const {
        if (n_ != b.n_) throw DimensionMismatch("matrix sizes differ");
    }
    std::size_t n_ = 0;
    std::vector<Quaternion> entries_;
};

inline MatrixH operator+(MatrixH a, const MatrixH& b) { return a += b; }
inline MatrixH operator-(MatrixH a, const MatrixH& b) { return a -= b; }
inline MatrixH operator*(MatrixH a, double s) { return a *= s; }
inline MatrixH operator*(double s, MatrixH a) { return a *= s; }

inline VectorH apply_h(const MatrixH& m, const VectorH& v) {
    if (m.n() != v.size()) throw DimensionMismatch("apply_h shapes differ");
    VectorH w(m.n());
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) w[i] += m(i, j) * v[j];
    return w;
}

inline MatrixH mul_h(const MatrixH& a, const MatrixH& b) {
    if (a.n() != b.n()) throw DimensionMismatch("mul_h shapes differ");
    MatrixH c(a.n());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t k = 0; k < a.n(); ++k)
            for (std::size_t j = 0; j < a.n(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

inline MatrixH operator*(const MatrixH& a, const MatrixH& b) { return mul_h(a, b); }

// Conjugate transpose.
inline MatrixH adjoint_h(const MatrixH& m) {
    MatrixH t(m.n());
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) t(j, i) = conj(m(i, j));
    return t;
}

inline double frobenius_norm(const MatrixH& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) s += norm_sq(m(i, j));
    return std::sqrt(s);
}

// C-linear operator m0 + m1 * Ri.
struct MatrixC {
    MatrixH m0;
    MatrixH m1;

    MatrixC() = default;
    explicit MatrixC(std::size_t n) : m0(n), m1(n) {}
    MatrixC(MatrixH part0, MatrixH part1) : m0(std::move(part0)), m1(std::move(part1)) {
        if (m0.n() != m1.n()) throw DimensionMismatch("MatrixC parts differ in size");
    }

    static MatrixC identity(std::size_t n) { return {MatrixH::identity(n), MatrixH(n)}; }
    static MatrixC from_h(const MatrixH& m) { return {m, MatrixH(m.n())}; }

    std::size_t n() const { return m0.n(); }
};

// R-linear operator m0 + m1*Ri + m2*Rj + m3*Rk.
struct MatrixR {
    MatrixH m0;
    MatrixH m1;
    MatrixH m2;
    MatrixH m3;

    MatrixR() = default;
    explicit MatrixR(std::size_t n) : m0(n), m1(n), m2(n), m3(n) {}
    MatrixR(MatrixH p0, MatrixH p1, MatrixH p2, MatrixH p3)
        : m0(std::move(p0)), m1(std::move(p1)), m2(std::move(p2)), m3(std::move(p3)) {
        const std::size_t n = m0.n();
        if (m1.n() != n || m2.n() != n || m3.n() != n)
            throw DimensionMismatch("MatrixR parts differ in size");
    }

    static MatrixR identity(std::size_t n) {
        return {MatrixH::identity(n), MatrixH(n), MatrixH(n), MatrixH(n)};
    }
    static MatrixR from_h(const MatrixH& m) {
        return {m, MatrixH(m.n()), MatrixH(m.n()), MatrixH(m.n())};
    }
    static MatrixR from_c(const MatrixC& m) {
        return {m.m0, m.m1, MatrixH(m.n()), MatrixH(m.n())};
    }
    // Right multiplication by the given imaginary unit (1=i, 2=j, 3=k).
    static MatrixR right_unit(std::size_t n, int axis) {
        MatrixR r(n);
        MatrixH id = MatrixH::identity(n);
        switch (axis) {
            case 1: r.m1 = id; break;
            case 2: r.m2 = id; break;
            case 3: r.m3 = id; break;
            default: throw ValidationError("right_unit axis must be 1, 2 or 3");
        }
        return r;
    }

    std::size_t n() const { return m0.n(); }
};

inline const MatrixH& part(const MatrixR& m, int mu) {
    switch (mu) {
        case 0: return m.m0;
        case 1: return m.m1;
        case 2: return m.m2;
        default: return m.m3;
    }
}

inline VectorH apply_c(const MatrixC& m, const VectorH& v) {
    VectorH w = apply_h(m.m0, v);
    VectorH w1 = apply_h(m.m1, v);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += w1[i] * Quaternion::unit_i();
    return w;
}

inline VectorH apply_r(const MatrixR& m, const VectorH& v) {
    static const Quaternion h[4] = {Quaternion{1.0}, Quaternion::unit_i(),
                                    Quaternion::unit_j(), Quaternion::unit_k()};
    VectorH w(m.n());
    for (int mu = 0; mu < 4; ++mu) {
        VectorH t = apply_h(part(m, mu), v);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += t[i] * h[mu];
    }
    return w;
}

// Composition a(b(v)).  Scalar parts multiply like quaternion components
// while the cross terms pick up the reversed-order signs of the right
// units (Ri Rj = R_{ji} = -Rk).
inline MatrixR mul_r(const MatrixR& a, const MatrixR& b) {
    if (a.n() != b.n()) throw DimensionMismatch("mul_r shapes differ");
    MatrixR c(a.n());
    c.m0 = a.m0 * b.m0 - a.m1 * b.m1 - a.m2 * b.m2 - a.m3 * b.m3;
    c.m1 = a.m0 * b.m1 + a.m1 * b.m0 - a.m2 * b.m3 + a.m3 * b.m2;
    c.m2 = a.m0 * b.m2 + a.m2 * b.m0 - a.m3 * b.m1 + a.m1 * b.m3;
    c.m3 = a.m0 * b.m3 + a.m3 * b.m0 - a.m1 * b.m2 + a.m2 * b.m1;
    return c;
}

inline MatrixC mul_c(const MatrixC& a, const MatrixC& b) {
    if (a.n() != b.n()) throw DimensionMismatch("mul_c shapes differ");
    return {a.m0 * b.m0 - a.m1 * b.m1, a.m0 * b.m1 + a.m1 * b.m0};
}

inline MatrixR operator*(const MatrixR& a, const MatrixR& b) { return mul_r(a, b); }
inline MatrixC operator*(const MatrixC& a, const MatrixC& b) { return mul_c(a, b); }

inline MatrixC operator+(const MatrixC& a, const MatrixC& b) {
    return {a.m0 + b.m0, a.m1 + b.m1};
}
inline MatrixC operator-(const MatrixC& a, const MatrixC& b) {
    return {a.m0 - b.m0, a.m1 - b.m1};
}
inline MatrixR operator+(const MatrixR& a, const MatrixR& b) {
    return {a.m0 + b.m0, a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3};
}
inline MatrixR operator-(const MatrixR& a, const MatrixR& b) {
    return {a.m0 - b.m0, a.m1 - b.m1, a.m2 - b.m2, a.m3 - b.m3};
}

// Frobenius scale used by residual tolerances throughout.
inline double frobenius_norm(const MatrixC& m) {
    double a = frobenius_norm(m.m0), b = frobenius_norm(m.m1);
    return std::sqrt(a * a + b * b);
}
inline double frobenius_norm(const MatrixR& m) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const double f = frobenius_norm(part(m, mu));
        s += f * f;
    }
    return std::sqrt(s);
}

} // namespace quatlin
