#pragma once

// Structure-preserving translations between quaternionic operators and
// ordinary dense matrices:
//
//   MatrixH  ->  2n x 2n complex  (complex adjoint, a proper subring)
//   MatrixC  ->  2n x 2n complex  (onto: 8n^2 real parameters both sides)
//   MatrixR  ->  4n x 4n real     (onto: 16n^2 real parameters both sides)
//
// plus the matching vector stackings and inverse pullbacks.  All three maps
// are ring homomorphisms; only the first has a nontrivial image pattern, so
// only its pullback can fail.

#include <array>
#include <complex>
#include <cstddef>

#include "quatlin/dense.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/quaternion.hpp"

namespace quatlin {

// ---------------------------------------------------------------------------
// vector stackings

// Symplectic stacking (psi1; psi2) of length 2n, psi = psi1 + j psi2.
inline ComplexVector complex_stack(const VectorH& v) {
    const std::size_t n = v.size();
    ComplexVector cv(2 * n);
    for (std::size_t t = 0; t < n; ++t) {
        const SymplecticPair p = symplectic_decompose(v[t]);
        cv[t] = p.z1;
        cv[n + t] = p.z2;
    }
    return cv;
}

inline VectorH unstack_complex(const ComplexVector& cv) {
    if (cv.size() % 2 != 0) throw DimensionMismatch("complex stack length must be even");
    const std::size_t n = cv.size() / 2;
    VectorH v(n);
    for (std::size_t t = 0; t < n; ++t)
        v[t] = symplectic_reconstruct({cv[t], cv[n + t]});
    return v;
}

// Component stacking (psi0; psi1; psi2; psi3) of length 4n.
inline RealVector real_stack(const VectorH& v) {
    const std::size_t n = v.size();
    RealVector rv(4 * n);
    for (std::size_t t = 0; t < n; ++t) {
        rv[t] = v[t].q0;
        rv[n + t] = v[t].q1;
        rv[2 * n + t] = v[t].q2;
        rv[3 * n + t] = v[t].q3;
    }
    return rv;
}

inline VectorH unstack_real(const RealVector& rv) {
    if (rv.size() % 4 != 0) throw DimensionMismatch("real stack length must be a multiple of 4");
    const std::size_t n = rv.size() / 4;
    VectorH v(n);
    for (std::size_t t = 0; t < n; ++t)
        v[t] = Quaternion{rv[t], rv[n + t], rv[2 * n + t], rv[3 * n + t]};
    return v;
}

// ---------------------------------------------------------------------------
// matrix translations

// Complex adjoint of an H-linear matrix M = M1 + j M2:
//   [[ M1, -conj(M2) ], [ M2, conj(M1) ]]
// (conj entrywise, no transpose).
inline ComplexMatrix complex_adjoint(const MatrixH& m) {
    const std::size_t n = m.n();
    ComplexMatrix a(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SymplecticPair p = symplectic_decompose(m(i, j));
            a(i, j) = p.z1;
            a(i, n + j) = -std::conj(p.z2);
            a(n + i, j) = p.z2;
            a(n + i, n + j) = std::conj(p.z1);
        }
    return a;
}

// Complex adjoint of a C-linear matrix: adjoint(m0) + i * adjoint(m1).
inline ComplexMatrix complex_adjoint(const MatrixC& m) {
    ComplexMatrix a = complex_adjoint(m.m0);
    const ComplexMatrix b = complex_adjoint(m.m1);
    const Complex iu{0.0, 1.0};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += iu * b(i, j);
    return a;
}

// The three right-multiplication units as 4n x 4n real matrices acting on
// component stacks.
struct RightUnitMatrices {
    RealMatrix ri;
    RealMatrix rj;
    RealMatrix rk;
};

inline RightUnitMatrices right_unit_matrices(std::size_t n) {
    const RealMatrix id = RealMatrix::identity(n);
    RightUnitMatrices u{RealMatrix(4 * n, 4 * n), RealMatrix(4 * n, 4 * n),
                        RealMatrix(4 * n, 4 * n)};
    auto put = [n](RealMatrix& m, std::size_t br, std::size_t bc, double sgn,
                   const RealMatrix& blk) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(br * n + i, bc * n + j) = sgn * blk(i, j);
    };
    put(u.ri, 0, 1, -1, id); put(u.ri, 1, 0, +1, id);
    put(u.ri, 2, 3, +1, id); put(u.ri, 3, 2, -1, id);

    put(u.rj, 0, 2, -1, id); put(u.rj, 1, 3, -1, id);
    put(u.rj, 2, 0, +1, id); put(u.rj, 3, 1, +1, id);

    put(u.rk, 0, 3, -1, id); put(u.rk, 1, 2, +1, id);
    put(u.rk, 2, 1, -1, id); put(u.rk, 3, 0, +1, id);
    return u;
}

// 4n x 4n real matrix of left multiplication by an H-linear matrix
// M = M0 + i M1 + j M2 + k M3 (real parts M0..M3) on component stacks:
//   [[ M0, -M1, -M2, -M3 ],
//    [ M1,  M0, -M3,  M2 ],
//    [ M2,  M3,  M0, -M1 ],
//    [ M3, -M2,  M1,  M0 ]]
inline RealMatrix left_component_embedding(const MatrixH& m) {
    const std::size_t n = m.n();
    RealMatrix a(4 * n, 4 * n);
    auto put = [&](std::size_t br, std::size_t bc, int comp, double sgn) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Quaternion& q = m(i, j);
                const double v = comp == 0 ? q.q0 : comp == 1 ? q.q1
                                 : comp == 2 ? q.q2 : q.q3;
                a(br * n + i, bc * n + j) = sgn * v;
            }
    };
    put(0, 0, 0, +1); put(0, 1, 1, -1); put(0, 2, 2, -1); put(0, 3, 3, -1);
    put(1, 0, 1, +1); put(1, 1, 0, +1); put(1, 2, 3, -1); put(1, 3, 2, +1);
    put(2, 0, 2, +1); put(2, 1, 3, +1); put(2, 2, 0, +1); put(2, 3, 1, -1);
    put(3, 0, 3, +1); put(3, 1, 2, -1); put(3, 2, 1, +1); put(3, 3, 0, +1);
    return a;
}

// Real adjoint of an R-linear matrix: left embeddings of the four parts
// composed with the right units.
inline RealMatrix real_adjoint(const MatrixR& m) {
    const std::size_t n = m.n();
    const RightUnitMatrices u = right_unit_matrices(n);
    RealMatrix a = left_component_embedding(m.m0);
    a += left_component_embedding(m.m1) * u.ri;
    a += left_component_embedding(m.m2) * u.rj;
    a += left_component_embedding(m.m3) * u.rk;
    return a;
}

// ---------------------------------------------------------------------------
// pullbacks

// Inverse of complex_adjoint on MatrixH images.  The redundant block pair
// is averaged; the pattern defect is measured in max-entry norm relative to
// the input and must stay below `tol`.
inline MatrixH from_complex_adjoint_h(const ComplexMatrix& c, double tol = 1e-10) {
    if (c.rows() != c.cols() || c.rows() % 2 != 0)
        throw DimensionMismatch("complex adjoint must be square of even dimension");
    const std::size_t n = c.rows() / 2;
    double defect = 0.0;
    MatrixH m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex a = c(i, j);
            const Complex b = c(i, n + j);
            const Complex c2 = c(n + i, j);
            const Complex d = c(n + i, n + j);
            defect = std::max(defect, std::abs(a - std::conj(d)));
            defect = std::max(defect, std::abs(b + std::conj(c2)));
            const Complex z1 = 0.5 * (a + std::conj(d));
            const Complex z2 = 0.5 * (c2 - std::conj(b));
            m(i, j) = symplectic_reconstruct({z1, z2});
        }
    const double scale = std::max(max_abs(c), 1e-300);
    if (defect > tol * scale)
        throw NotInImage("matrix is not a complex adjoint of an H-linear operator",
                         defect / scale);
    return m;
}

// Inverse of complex_adjoint on MatrixC.  The map is onto, so this never
// fails; `tol` is accepted for interface symmetry and ignored.
inline MatrixC from_complex_adjoint_c(const ComplexMatrix& c, double /*tol*/ = 1e-10) {
    if (c.rows() != c.cols() || c.rows() % 2 != 0)
        throw DimensionMismatch("complex adjoint must be square of even dimension");
    const std::size_t n = c.rows() / 2;
    MatrixC m(n);
    const Complex mi{0.0, -1.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex a = c(i, j);
            const Complex b = c(i, n + j);
            const Complex c2 = c(n + i, j);
            const Complex d = c(n + i, n + j);
            const Complex p = 0.5 * (a + std::conj(d));
            const Complex pp = mi * 0.5 * (a - std::conj(d));
            const Complex q = 0.5 * (c2 - std::conj(b));
            const Complex qq = mi * 0.5 * (c2 + std::conj(b));
            m.m0(i, j) = symplectic_reconstruct({p, q});
            m.m1(i, j) = symplectic_reconstruct({pp, qq});
        }
    return m;
}

namespace detail {

// 4x4 real matrices of left/right multiplication by the basis units,
// acting on a single quaternion's component vector.
inline const std::array<std::array<double, 16>, 4>& left_unit_tables() {
    static const std::array<std::array<double, 16>, 4> t = [] {
        std::array<std::array<double, 16>, 4> r{};
        const Quaternion h[4] = {Quaternion{1.0}, Quaternion::unit_i(),
                                 Quaternion::unit_j(), Quaternion::unit_k()};
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                const Quaternion p = h[a] * h[c];
                r[a][0 * 4 + c] = p.q0;
                r[a][1 * 4 + c] = p.q1;
                r[a][2 * 4 + c] = p.q2;
                r[a][3 * 4 + c] = p.q3;
            }
        return r;
    }();
    return t;
}

inline const std::array<std::array<double, 16>, 4>& right_unit_tables() {
    static const std::array<std::array<double, 16>, 4> t = [] {
        std::array<std::array<double, 16>, 4> r{};
        const Quaternion h[4] = {Quaternion{1.0}, Quaternion::unit_i(),
                                 Quaternion::unit_j(), Quaternion::unit_k()};
        for (int m = 0; m < 4; ++m)
            for (int c = 0; c < 4; ++c) {
                const Quaternion p = h[c] * h[m];
                r[m][0 * 4 + c] = p.q0;
                r[m][1 * 4 + c] = p.q1;
                r[m][2 * 4 + c] = p.q2;
                r[m][3 * 4 + c] = p.q3;
            }
        return r;
    }();
    return t;
}

} // namespace detail

// Inverse of real_adjoint.  The map is onto the full 4n x 4n real ring, so
// every input has a unique preimage: each 4x4 component block is resolved
// against the orthogonal basis L_a R_mu (Frobenius inner products / 4).
inline MatrixR from_real_adjoint(const RealMatrix& x, double /*tol*/ = 1e-10) {
    if (x.rows() != x.cols() || x.rows() % 4 != 0)
        throw DimensionMismatch("real adjoint must be square with dimension 4n");
    const std::size_t n = x.rows() / 4;
    const auto& lt = detail::left_unit_tables();
    const auto& rt = detail::right_unit_tables();
    MatrixR m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < n; ++p) {
            double t[16];
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    t[r * 4 + c] = x(r * n + i, c * n + p);
            for (int mu = 0; mu < 4; ++mu) {
                double comp[4];
                for (int a = 0; a < 4; ++a) {
                    // basis matrix (L_a R_mu)[r][c] = sum_s lt[a][r][s]*rt[mu][s][c]
                    double acc = 0.0;
                    for (int r = 0; r < 4; ++r)
                        for (int c = 0; c < 4; ++c) {
                            double basis = 0.0;
                            for (int s = 0; s < 4; ++s)
                                basis += lt[a][r * 4 + s] * rt[mu][s * 4 + c];
                            acc += basis * t[r * 4 + c];
                        }
                    comp[a] = acc / 4.0;
                }
                MatrixH& dst = mu == 0 ? m.m0 : mu == 1 ? m.m1 : mu == 2 ? m.m2 : m.m3;
                dst(i, p) = Quaternion{comp[0], comp[1], comp[2], comp[3]};
            }
        }
    return m;
}

} // namespace quatlin
