#pragma once

// Constant-coefficient quaternionic differential equations
//
//   psi^(n) = A_{n-1} psi^(n-1) + ... + A_0 psi
//
// through their block companion operators: exponential solution bases from
// companion eigenpairs, quaternionic quadratic (and higher scalar
// polynomial) roots, and initial value problems propagated by one matrix
// exponential per grid point.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "quatlin/embed.hpp"
#include "quatlin/errors.hpp"
#include "quatlin/funcalc.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/quaternion.hpp"
#include "quatlin/spectra.hpp"

namespace quatlin {

// Coefficients ordered highest derivative first: {A_{n-1}, ..., A_0}.
// Initial conditions, when present, are psi(0), psi'(0), ... in that order.
template <class Op>
struct OdeProblem {
    int order = 0;
    std::vector<Op> coefficients;
    std::vector<VectorH> initial_conditions;
};

using OdeProblemH = OdeProblem<MatrixH>;
using OdeProblemC = OdeProblem<MatrixC>;
using OdeProblemR = OdeProblem<MatrixR>;

namespace ode_detail {

inline void check_problem_shape(int order, std::size_t ncoeff, std::size_t n) {
    if (order < 1) throw ValidationError("ODE order must be positive");
    if (ncoeff != static_cast<std::size_t>(order))
        throw ValidationError("ODE wants exactly `order` coefficient blocks");
    if (n == 0) throw ValidationError("ODE coefficients must be nonempty");
}

// First block row holds the coefficients; identity blocks sit below.
inline MatrixH companion_h_parts(const std::vector<MatrixH>& row, bool with_identity) {
    const std::size_t order = row.size();
    const std::size_t n = row[0].n();
    MatrixH c(order * n);
    for (std::size_t b = 0; b < order; ++b)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c(i, b * n + j) = row[b](i, j);
    if (with_identity)
        for (std::size_t b = 1; b < order; ++b)
            for (std::size_t i = 0; i < n; ++i)
                c(b * n + i, (b - 1) * n + i) = Quaternion{1.0};
    return c;
}

} // namespace ode_detail

inline MatrixH companion(const OdeProblemH& p) {
    ode_detail::check_problem_shape(p.order, p.coefficients.size(),
                                    p.coefficients.empty() ? 0 : p.coefficients[0].n());
    return ode_detail::companion_h_parts(p.coefficients, true);
}

inline MatrixC companion(const OdeProblemC& p) {
    ode_detail::check_problem_shape(p.order, p.coefficients.size(),
                                    p.coefficients.empty() ? 0 : p.coefficients[0].n());
    std::vector<MatrixH> r0, r1;
    for (const MatrixC& a : p.coefficients) {
        r0.push_back(a.m0);
        r1.push_back(a.m1);
    }
    return {ode_detail::companion_h_parts(r0, true),
            ode_detail::companion_h_parts(r1, false)};
}

inline MatrixR companion(const OdeProblemR& p) {
    ode_detail::check_problem_shape(p.order, p.coefficients.size(),
                                    p.coefficients.empty() ? 0 : p.coefficients[0].n());
    std::vector<MatrixH> r0, r1, r2, r3;
    for (const MatrixR& a : p.coefficients) {
        r0.push_back(a.m0);
        r1.push_back(a.m1);
        r2.push_back(a.m2);
        r3.push_back(a.m3);
    }
    return {ode_detail::companion_h_parts(r0, true),
            ode_detail::companion_h_parts(r1, false),
            ode_detail::companion_h_parts(r2, false),
            ode_detail::companion_h_parts(r3, false)};
}

// ---------------------------------------------------------------------------
// quadratic and scalar polynomial roots

struct QuadraticRoot {
    Quaternion q;
    double residual;  // |q^2 - alpha q - beta|
    bool spherical;   // q is the canonical representative of a root sphere
};

namespace ode_detail {

inline Quaternion eval_left_polynomial(const std::vector<Quaternion>& coeffs,
                                       const Quaternion& q) {
    // q^n - A_{n-1} q^{n-1} - ... - A_0, coeffs = {A_{n-1}, ..., A_0}
    const std::size_t n = coeffs.size();
    std::vector<Quaternion> powers(n + 1);
    powers[0] = Quaternion{1.0};
    for (std::size_t k = 1; k <= n; ++k) powers[k] = powers[k - 1] * q;
    Quaternion r = powers[n];
    for (std::size_t k = 0; k < n; ++k) r -= coeffs[k] * powers[n - 1 - k];
    return r;
}

} // namespace ode_detail

// Roots of scalar left polynomials q^n = A_{n-1} q^{n-1} + ... + A_0 from
// the companion spectrum: q = w z conj(w) for each eigenpair whose bottom
// component w is nonvanishing.  Duplicate roots are collapsed.
inline std::vector<QuadraticRoot> polynomial_roots(const std::vector<Quaternion>& coeffs) {
    if (coeffs.empty()) throw ValidationError("polynomial wants at least one coefficient");
    const std::size_t order = coeffs.size();
    OdeProblemH p;
    p.order = static_cast<int>(order);
    for (const Quaternion& a : coeffs) p.coefficients.push_back(MatrixH{{a}});
    const MatrixH comp = companion(p);
    const std::vector<EigenpairH> pairs = right_spectrum(comp);
    double scale = 1.0;
    for (const Quaternion& a : coeffs) scale += abs(a);
    std::vector<QuadraticRoot> roots;
    for (const EigenpairH& pr : pairs) {
        const Quaternion w = pr.psi[order - 1];
        if (abs(w) < 1e-10 * norm(pr.psi))
            throw ZeroW("companion eigenvector has vanishing bottom block");
        const Quaternion wu = w * (1.0 / abs(w));
        const Quaternion q = wu * from_complex(pr.z) * conj(wu);
        bool dup = false;
        for (const QuadraticRoot& r : roots)
            if (abs(r.q - q) <= 1e-8 * (1.0 + abs(q))) dup = true;
        if (dup) continue;
        QuadraticRoot root;
        root.q = q;
        root.residual = abs(ode_detail::eval_left_polynomial(coeffs, q));
        root.spherical = false;
        roots.push_back(root);
    }
    return roots;
}

// Roots of q^2 = alpha q + beta.  Real commuting coefficients with a
// negative discriminant make every point of the similarity sphere a root;
// that case returns the canonical complex representative flagged spherical.
// (Nonreal coefficients always give isolated roots, even when the companion
// eigenvalue is doubled.)
inline std::vector<QuadraticRoot> quadratic_roots(const Quaternion& alpha,
                                                  const Quaternion& beta) {
    const double scale = 1.0 + abs(alpha) + abs(beta);
    if (imag_norm(alpha) <= 1e-12 * scale && imag_norm(beta) <= 1e-12 * scale) {
        const double disc = alpha.q0 * alpha.q0 + 4.0 * beta.q0;
        if (disc < 0.0) {
            QuadraticRoot root;
            root.q = Quaternion{0.5 * alpha.q0, 0.5 * std::sqrt(-disc), 0.0, 0.0};
            root.residual =
                abs(ode_detail::eval_left_polynomial({alpha, beta}, root.q));
            root.spherical = true;
            return {root};
        }
    }
    return polynomial_roots({alpha, beta});
}

// ---------------------------------------------------------------------------
// exponential solution bases

// One exponential solution of the first-order companion system.
//   plain (no coupled_direction):   psi(x) = direction * e^{z x}
//   coupled (R kind):               psi(x) = e^{lambda x} (direction cos(mu x)
//                                            - coupled_direction sin(mu x))
// and the partner solution swaps cos/sin as in the coupled pair equations.
struct ExponentialSolution {
    Complex exponent;
    VectorH direction;
    std::optional<VectorH> coupled_direction;

    VectorH eval(double x) const {
        if (!coupled_direction) {
            return direction * std::exp(exponent * x);
        }
        const double e = std::exp(exponent.real() * x);
        const double c = std::cos(exponent.imag() * x);
        const double s = std::sin(exponent.imag() * x);
        VectorH out = direction * (e * c) - (*coupled_direction) * (e * s);
        return out;
    }
    VectorH eval_partner(double x) const {
        if (!coupled_direction) return eval(x);
        const double e = std::exp(exponent.real() * x);
        const double c = std::cos(exponent.imag() * x);
        const double s = std::sin(exponent.imag() * x);
        return (*coupled_direction) * (e * c) + direction * (e * s);
    }
};

namespace ode_detail {

inline VectorH bottom_block(const VectorH& v, std::size_t n) {
    VectorH out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[v.size() - n + i];
    return out;
}

} // namespace ode_detail

// H kind: order*n solutions direction * e^{z x} with right-H independence.
inline std::vector<ExponentialSolution> general_solution(const OdeProblemH& p) {
    const MatrixH comp = companion(p);
    const std::size_t n = p.coefficients[0].n();
    const std::size_t dim = comp.n();
    const std::vector<EigenpairH> pairs = right_spectrum(comp);
    MatrixH s(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) s(i, j) = pairs[j].psi[i];
    if (numerical_rank(complex_adjoint(s), 1e-6) < 2 * dim)
        throw DefectiveCompanion(
            "companion is not diagonalizable; use the propagator route");
    std::vector<ExponentialSolution> out;
    for (const EigenpairH& pr : pairs) {
        ExponentialSolution sol;
        sol.exponent = pr.z;
        sol.direction = ode_detail::bottom_block(pr.psi, n);
        out.push_back(std::move(sol));
    }
    return out;
}

// C kind: 2*order*n solutions (the companion adjoint is 2 dim x 2 dim).
inline std::vector<ExponentialSolution> general_solution(const OdeProblemC& p) {
    const MatrixC comp = companion(p);
    const std::size_t n = p.coefficients[0].n();
    const RightSpectrumC s = right_spectrum(comp);
    if (s.independent_vectors < 2 * comp.n())
        throw DefectiveCompanion(
            "companion is not diagonalizable; use the propagator route");
    std::vector<ExponentialSolution> out;
    for (const EigenpairH& pr : s.pairs) {
        ExponentialSolution sol;
        sol.exponent = pr.z;
        sol.direction = ode_detail::bottom_block(pr.psi, n);
        out.push_back(std::move(sol));
    }
    return out;
}

// R kind: coupled exponents; complex classes carry a partner direction and
// stand for the two real solutions e^{lambda x} (psi cos - phi sin) and
// e^{lambda x} (phi cos + psi sin).
inline std::vector<ExponentialSolution> general_solution(const OdeProblemR& p) {
    const MatrixR comp = companion(p);
    const std::size_t n = p.coefficients[0].n();
    const RealMatrix e = real_adjoint(comp);
    const SpectrumResult es = eig_real(e);
    ComplexMatrix v(e.rows(), e.rows());
    for (std::size_t j = 0; j < e.rows(); ++j)
        for (std::size_t i = 0; i < e.rows(); ++i) v(i, j) = es.eigenvectors[j][i];
    if (numerical_rank(v, 1e-6) < e.rows())
        throw DefectiveCompanion(
            "companion is not diagonalizable; use the propagator route");
    std::vector<ExponentialSolution> out;
    for (const CoupledEigenpair& cp : coupled_spectrum(comp)) {
        ExponentialSolution sol;
        sol.exponent = Complex{cp.lambda, cp.mu};
        sol.direction = ode_detail::bottom_block(cp.psi, n);
        if (cp.mu > 0.0) sol.coupled_direction = ode_detail::bottom_block(cp.phi, n);
        out.push_back(std::move(sol));
    }
    return out;
}

// ---------------------------------------------------------------------------
// initial value problems

struct TrajectoryPoint {
    double x;
    VectorH psi;
};

namespace ode_detail {

template <class Op, class ApplyFn, class ExpFn>
std::vector<TrajectoryPoint> propagate(const OdeProblem<Op>& p, const Op& comp,
                                       std::size_t n, const std::vector<double>& xs,
                                       ApplyFn&& apply_fn, ExpFn&& exp_fn) {
    if (p.initial_conditions.size() != static_cast<std::size_t>(p.order))
        throw ValidationError("IVP wants `order` initial condition vectors");
    const std::size_t order = static_cast<std::size_t>(p.order);
    VectorH state(order * n);
    for (std::size_t b = 0; b < order; ++b) {
        const VectorH& ic = p.initial_conditions[order - 1 - b];
        if (ic.size() != n) throw ValidationError("initial condition size mismatch");
        for (std::size_t i = 0; i < n; ++i) state[b * n + i] = ic[i];
    }
    std::vector<TrajectoryPoint> out;
    out.reserve(xs.size());
    for (const double x : xs) {
        const Op prop = exp_fn(comp, x);
        const VectorH y = apply_fn(prop, state);
        out.push_back({x, bottom_block(y, n)});
    }
    return out;
}

} // namespace ode_detail

// Constant coefficients make one exponential per grid point exact up to the
// propagator error; there is no step-to-step accumulation.
inline std::vector<TrajectoryPoint> solve_ivp(const OdeProblemH& p,
                                              const std::vector<double>& xs) {
    const MatrixH comp = companion(p);
    return ode_detail::propagate(p, comp, p.coefficients[0].n(), xs,
                                 [](const MatrixH& m, const VectorH& v) { return apply_h(m, v); },
                                 [](const MatrixH& m, double x) { return expm(m, x); });
}

inline std::vector<TrajectoryPoint> solve_ivp(const OdeProblemC& p,
                                              const std::vector<double>& xs) {
    const MatrixC comp = companion(p);
    return ode_detail::propagate(p, comp, p.coefficients[0].n(), xs,
                                 [](const MatrixC& m, const VectorH& v) { return apply_c(m, v); },
                                 [](const MatrixC& m, double x) { return expm(m, x); });
}

inline std::vector<TrajectoryPoint> solve_ivp(const OdeProblemR& p,
                                              const std::vector<double>& xs) {
    const MatrixR comp = companion(p);
    return ode_detail::propagate(p, comp, p.coefficients[0].n(), xs,
                                 [](const MatrixR& m, const VectorH& v) { return apply_r(m, v); },
                                 [](const MatrixR& m, double x) { return expm(m, x); });
}

} // namespace quatlin
