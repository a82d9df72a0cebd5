#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <ostream>

namespace quatlin {

using Complex = std::complex<double>;

// A real quaternion q0 + i q1 + j q2 + k q3 with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double s) : q0(s) {}
    constexpr Quaternion(double a, double b, double c, double d)
        : q0(a), q1(b), q2(c), q3(d) {}

    static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        q0 += r.q0; q1 += r.q1; q2 += r.q2; q3 += r.q3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        q0 -= r.q0; q1 -= r.q1; q2 -= r.q2; q3 -= r.q3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        q0 *= s; q1 *= s; q2 *= s; q3 *= s;
        return *this;
    }
    constexpr Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }

    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

constexpr double norm_sq(const Quaternion& q) {
    return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

inline double abs(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

// Norm of the imaginary (vector) part.
inline double imag_norm(const Quaternion& q) {
    return std::sqrt(q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3);
}

inline Quaternion inverse(const Quaternion& q) {
    const double n2 = norm_sq(q);
    return conj(q) * (1.0 / n2);
}

constexpr Quaternion from_complex(const Complex& z) {
    return {z.real(), z.imag(), 0.0, 0.0};
}

// Complex part in the symplectic sense: q0 + i q1.
constexpr Complex complex_part(const Quaternion& q) { return {q.q0, q.q1}; }

inline Quaternion operator*(const Quaternion& a, const Complex& z) {
    return a * from_complex(z);
}
inline Quaternion operator*(const Complex& z, const Quaternion& a) {
    return from_complex(z) * a;
}

// q = z1 + j z2 with z1 = q0 + i q1 and z2 = q2 - i q3 (j i = -k fixes the
// sign of z2's imaginary part).
struct SymplecticPair {
    Complex z1;
    Complex z2;
};

constexpr SymplecticPair symplectic_decompose(const Quaternion& q) {
    return {Complex{q.q0, q.q1}, Complex{q.q2, -q.q3}};
}

constexpr Quaternion symplectic_reconstruct(const SymplecticPair& p) {
    // z1 + j z2 = re(z1) + i im(z1) + j re(z2) + k (-im(z2))
    return {p.z1.real(), p.z1.imag(), p.z2.real(), -p.z2.imag()};
}

// Result of moving a quaternion to its canonical complex representative:
// conj(u) * q * u = z with im(z) >= 0 and |u| = 1.
struct Rephasing {
    Complex z;
    Quaternion u;
};

// Unit quaternion u with conj(u) q u = q0 + i |Im q|.  The construction
// rotates the unit imaginary direction of q onto i; any pure-real q gets
// u = 1, and the antipodal direction -i (where no continuous choice
// exists) gets u = j.
inline Rephasing rephase_to_complex(const Quaternion& q) {
    const double r = imag_norm(q);
    if (r == 0.0) return {Complex{q.q0, 0.0}, Quaternion{1.0}};
    const Quaternion n{0.0, q.q1 / r, q.q2 / r, q.q3 / r};
    // u = normalize(1 - n*i) satisfies u i conj(u) = n, hence
    // conj(u) n u = i.  Degenerates exactly when n = -i.
    Quaternion u = Quaternion{1.0} - n * Quaternion::unit_i();
    const double un = abs(u);
    if (un < 1e-12) {
        u = Quaternion::unit_j(); // conj(j) (-i) j = i
    } else {
        u = u * (1.0 / un);
    }
    return {Complex{q.q0, r}, u};
}

// exp of a quaternion: e^{q0} (cos|v| + v/|v| sin|v|) for v = Im q.
inline Quaternion exp(const Quaternion& q) {
    const double r = imag_norm(q);
    const double e = std::exp(q.q0);
    if (r == 0.0) return {e, 0.0, 0.0, 0.0};
    const double s = e * std::sin(r) / r;
    return {e * std::cos(r), s * q.q1, s * q.q2, s * q.q3};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.q0 << ',' << q.q1 << ',' << q.q2 << ',' << q.q3 << ')';
}

} // namespace quatlin
