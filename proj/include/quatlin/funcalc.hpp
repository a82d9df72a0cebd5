#pragma once

// Matrix functions for the three operator kinds: nonnegative integer powers
// and the propagator exp(M x).  The exponential's default route goes through
// the adjoint embedding (scaling-and-squaring with a diagonal Pade core) and
// pulls the result back; the canonical route S exp(D x) S^{-1} exists for
// cross-validation where diagonalization succeeds.

#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>

#include "quatlin/dense.hpp"
#include "quatlin/embed.hpp"
#include "quatlin/errors.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/quaternion.hpp"
#include "quatlin/spectra.hpp"

namespace quatlin {

// ---------------------------------------------------------------------------
// powers

inline MatrixH power(const MatrixH& m, unsigned k) {
    MatrixH acc = MatrixH::identity(m.n());
    MatrixH base = m;
    for (; k > 0; k >>= 1) {
        if (k & 1U) acc = mul_h(acc, base);
        if (k > 1) base = mul_h(base, base);
    }
    return acc;
}

inline MatrixC power(const MatrixC& m, unsigned k) {
    MatrixC acc = MatrixC::identity(m.n());
    MatrixC base = m;
    for (; k > 0; k >>= 1) {
        if (k & 1U) acc = mul_c(acc, base);
        if (k > 1) base = mul_c(base, base);
    }
    return acc;
}

inline MatrixR power(const MatrixR& m, unsigned k) {
    MatrixR acc = MatrixR::identity(m.n());
    MatrixR base = m;
    for (; k > 0; k >>= 1) {
        if (k & 1U) acc = mul_r(acc, base);
        if (k > 1) base = mul_r(base, base);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// dense exponential

// Scaling and squaring with the diagonal Pade(6,6) core; inputs are scaled
// until the norm sits at or below 1/2.
template <class S>
DenseMatrix<S> expm_dense(const DenseMatrix<S>& a) {
    const std::size_t m = a.rows();
    if (m != a.cols()) throw DimensionMismatch("expm_dense wants a square matrix");
    const double anorm = frobenius_norm(a);
    int squarings = 0;
    double scaled = anorm;
    while (scaled > 0.5) { scaled *= 0.5; ++squarings; }
    DenseMatrix<S> b = a * S{std::ldexp(1.0, -squarings)};

    constexpr int q = 6;
    double coeff[q + 1];
    coeff[0] = 1.0;
    for (int k = 1; k <= q; ++k)
        coeff[k] = coeff[k - 1] * static_cast<double>(q - k + 1) /
                   static_cast<double>(k * (2 * q - k + 1));
    DenseMatrix<S> num = DenseMatrix<S>::identity(m);
    DenseMatrix<S> den = DenseMatrix<S>::identity(m);
    DenseMatrix<S> pw = DenseMatrix<S>::identity(m);
    for (int k = 1; k <= q; ++k) {
        pw = pw * b;
        const DenseMatrix<S> term = pw * S{coeff[k]};
        num += term;
        if (k % 2 == 0) den += term;
        else den -= term;
    }
    auto f = lu_factor(den);
    if (f.singular) throw InternalConsistency("Pade denominator is singular");
    DenseMatrix<S> x(m, m);
    std::vector<S> col(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) col[i] = num(i, j);
        const std::vector<S> sol = lu_solve(f, col);
        for (std::size_t i = 0; i < m; ++i) x(i, j) = sol[i];
    }
    for (int s = 0; s < squarings; ++s) x = x * x;
    return x;
}

// ---------------------------------------------------------------------------
// operator exponentials

enum class ExpmRoute { Embedding, Canonical };

// exp(M x) for an H-linear operator.
inline MatrixH expm(const MatrixH& m, double x, double tol = 1e-10,
                    ExpmRoute route = ExpmRoute::Embedding) {
    if (!std::isfinite(x)) throw ValidationError("expm wants a finite parameter");
    if (route == ExpmRoute::Canonical) {
        const CanonicalFormH f = diagonalize(m);
        MatrixH e(m.n());
        for (std::size_t k = 0; k < m.n(); ++k)
            e(k, k) = exp(f.d(k, k) * x);
        return mul_h(f.s, mul_h(e, inverse_via_adjoint(f.s)));
    }
    const ComplexMatrix em = complex_adjoint(m) * Complex{x, 0.0};
    try {
        return from_complex_adjoint_h(expm_dense(em), std::max(tol, 1e-10));
    } catch (const NotInImage& e) {
        throw InternalConsistency(
            std::string("exponential left the adjoint image: ") + e.what());
    }
}

// exp(M x) for a C-linear operator.
inline MatrixC expm(const MatrixC& m, double x, double tol = 1e-10,
                    ExpmRoute route = ExpmRoute::Embedding) {
    if (!std::isfinite(x)) throw ValidationError("expm wants a finite parameter");
    (void)tol;
    const ComplexMatrix em = complex_adjoint(m) * Complex{x, 0.0};
    if (route == ExpmRoute::Canonical) {
        const SpectrumResult s = eig_complex(complex_adjoint(m));
        const std::size_t dim = 2 * m.n();
        ComplexMatrix v(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < dim; ++i) v(i, j) = s.eigenvectors[j][i];
        if (numerical_rank(v, 1e-6) < dim)
            throw Defective("C-linear operator is not diagonalizable at tolerance", {});
        ComplexMatrix e(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            e(j, j) = std::exp(s.eigenvalues[j] * x);
        return from_complex_adjoint_c(v * e * inverse(v));
    }
    return from_complex_adjoint_c(expm_dense(em));
}

// exp(M x) for an R-linear operator.
inline MatrixR expm(const MatrixR& m, double x, double tol = 1e-10,
                    ExpmRoute route = ExpmRoute::Embedding) {
    if (!std::isfinite(x)) throw ValidationError("expm wants a finite parameter");
    (void)tol;
    if (route == ExpmRoute::Canonical) {
        const RealMatrix e = real_adjoint(m);
        const SpectrumResult s = eig_real(e);
        const std::size_t dim = e.rows();
        ComplexMatrix v(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < dim; ++i) v(i, j) = s.eigenvectors[j][i];
        if (numerical_rank(v, 1e-6) < dim)
            throw Defective("R-linear operator is not diagonalizable at tolerance", {});
        ComplexMatrix d(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            d(j, j) = std::exp(s.eigenvalues[j] * x);
        const ComplexMatrix ec = v * d * inverse(v);
        RealMatrix er(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) er(i, j) = ec(i, j).real();
        return from_real_adjoint(er);
    }
    RealMatrix em = real_adjoint(m);
    em *= x;
    return from_real_adjoint(expm_dense(em));
}

// ---------------------------------------------------------------------------
// kind-erased request

struct PropagatorRequest {
    std::variant<MatrixH, MatrixC, MatrixR> op;
    double x = 0.0;
};

using PropagatorResult = std::variant<MatrixH, MatrixC, MatrixR>;

inline PropagatorResult expm(const PropagatorRequest& req, double tol = 1e-10,
                             ExpmRoute route = ExpmRoute::Embedding) {
    return std::visit(
        [&](const auto& m) -> PropagatorResult { return expm(m, req.x, tol, route); },
        req.op);
}

} // namespace quatlin
