#pragma once

// Shared generators and independent oracles for the test suites.  Oracles
// live here, on purpose away from the library code paths they check.

#include <complex>
#include <random>

#include "quatlin/dense.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/quaternion.hpp"

namespace test {

using quatlin::Complex;
using quatlin::ComplexMatrix;
using quatlin::MatrixC;
using quatlin::MatrixH;
using quatlin::MatrixR;
using quatlin::Quaternion;
using quatlin::RealMatrix;
using quatlin::VectorH;

// Independent Hamilton-product oracle: expand over the basis table
// instead of the closed-form component formulas.
inline Quaternion oracle_mul(const Quaternion& a, const Quaternion& b) {
    // basis products h_a * h_b -> (sign, index)
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const double sgn[4][4] = {{1, 1, 1, 1},
                                     {1, -1, 1, -1},
                                     {1, -1, -1, 1},
                                     {1, 1, -1, -1}};
    const double ac[4] = {a.q0, a.q1, a.q2, a.q3};
    const double bc[4] = {b.q0, b.q1, b.q2, b.q3};
    double out[4] = {0, 0, 0, 0};
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) out[idx[s][t]] += sgn[s][t] * ac[s] * bc[t];
    return {out[0], out[1], out[2], out[3]};
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64{seed}; }

inline double rand_real(std::mt19937_64& g, double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Quaternion rand_quaternion(std::mt19937_64& g) {
    return {rand_real(g), rand_real(g), rand_real(g), rand_real(g)};
}

inline Quaternion rand_unit_quaternion(std::mt19937_64& g) {
    Quaternion q = rand_quaternion(g);
    while (quatlin::abs(q) < 1e-3) q = rand_quaternion(g);
    return q * (1.0 / quatlin::abs(q));
}

inline VectorH rand_vector(std::mt19937_64& g, std::size_t n) {
    VectorH v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rand_quaternion(g);
    return v;
}

inline MatrixH rand_matrix_h(std::mt19937_64& g, std::size_t n) {
    MatrixH m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rand_quaternion(g);
    return m;
}

inline MatrixC rand_matrix_c(std::mt19937_64& g, std::size_t n) {
    return {rand_matrix_h(g, n), rand_matrix_h(g, n)};
}

inline MatrixR rand_matrix_r(std::mt19937_64& g, std::size_t n) {
    return {rand_matrix_h(g, n), rand_matrix_h(g, n), rand_matrix_h(g, n),
            rand_matrix_h(g, n)};
}

inline ComplexMatrix rand_matrix_complex(std::mt19937_64& g, std::size_t m) {
    ComplexMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = {rand_real(g), rand_real(g)};
    return a;
}

inline RealMatrix rand_matrix_real(std::mt19937_64& g, std::size_t m) {
    RealMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = rand_real(g);
    return a;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace test
