#pragma once

// Stationary states of the quaternionic Schrodinger equation in a single
// constant-potential region,
//
//   d_t Psi = (hbar/2m) i d_xx Psi - (V/hbar) i Psi + (1/hbar) j W Psi,
//
// with a complex amplitude W on the j potential.  Separating variables with
// the time exponential on the right, Psi = psi(x) exp(-i E t / hbar),
// leaves the C-linear operator
//
//   psi'' = (2m/hbar^2) (V + k W + E L_i R_i) psi
//
// whose order-2 companion carries four characteristic exponents: the
// complex sector reproduces standard quantum mechanics, the j sector
// doubles the solution count.

#include <array>
#include <cmath>
#include <complex>

#include "quatlin/errors.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/odes.hpp"
#include "quatlin/quaternion.hpp"
#include "quatlin/spectra.hpp"

namespace quatlin {

struct PhysicalParams {
    double m = 0.5;   // mass
    double hbar = 1.0;
    double V = 0.0;   // real potential
    Complex W{};      // complex amplitude multiplying j
    double E = 0.0;   // stationary energy
};

namespace qschrod_detail {

inline void validate(const PhysicalParams& p) {
    if (!(p.m > 0.0) || !(p.hbar > 0.0))
        throw ValidationError("mass and action scale must be positive");
    if (!std::isfinite(p.V) || !std::isfinite(p.E) || !std::isfinite(p.W.real()) ||
        !std::isfinite(p.W.imag()))
        throw ValidationError("physical parameters must be finite");
}

} // namespace qschrod_detail

// The 1x1 C-linear operator of the stationary equation:
//   m0 = (2m/hbar^2)(V + k W),  m1 = (2m/hbar^2) E i.
inline MatrixC build_a0(const PhysicalParams& p) {
    qschrod_detail::validate(p);
    const double c = 2.0 * p.m / (p.hbar * p.hbar);
    MatrixC a(1);
    // k W = Im(W) j + Re(W) k
    a.m0(0, 0) = Quaternion{c * p.V, 0.0, c * p.W.imag(), c * p.W.real()};
    a.m1(0, 0) = Quaternion{0.0, c * p.E, 0.0, 0.0};
    return a;
}

struct StationaryBasis {
    std::array<Complex, 4> exponents;     // sorted by (re, im)
    std::array<Quaternion, 4> directions; // unit scalars
    std::array<double, 4> residuals;      // |A0 eta - eta z^2|
};

// Characteristic exponents and directions from the C-linear companion
// [[0, A0], [1, 0]].  Degenerate spectra (for instance E = V at W = 0)
// leave the companion without a full eigenbasis and are refused.
inline StationaryBasis stationary_basis(const PhysicalParams& p) {
    qschrod_detail::validate(p);
    const MatrixC a0 = build_a0(p);
    OdeProblemC ode;
    ode.order = 2;
    ode.coefficients = {MatrixC(1), a0};
    const MatrixC comp = companion(ode);
    const RightSpectrumC s = right_spectrum(comp);
    if (s.independent_vectors < 4)
        throw DefectiveCompanion("stationary companion is defective at this energy");
    StationaryBasis basis;
    for (std::size_t t = 0; t < 4; ++t) {
        const EigenpairH& pr = s.pairs[t];
        Quaternion eta = pr.psi[1];
        const double ne = abs(eta);
        if (ne > 0.0) eta *= 1.0 / ne;
        basis.exponents[t] = pr.z;
        basis.directions[t] = eta;
        const VectorH lhs = apply_c(a0, VectorH{eta});
        basis.residuals[t] = abs(lhs[0] - eta * (pr.z * pr.z));
    }
    return basis;
}

struct FullSolutionReport {
    double right_form_residual; // max over basis elements and grid points
    double left_form_residual;  // same check with the time exponential moved left
};

namespace qschrod_detail {

inline Quaternion wave(const Quaternion& eta, const Complex& z, const Complex& phase_exp,
                       double x, double t, bool right_form) {
    const Quaternion spatial = eta * std::exp(z * x);
    const Quaternion phase = from_complex(std::exp(phase_exp * t));
    return right_form ? spatial * phase : phase * spatial;
}

} // namespace qschrod_detail

// Finite-difference residual of the time-dependent equation for every
// basis element on the grid, for both placements of the time exponential.
// Only the right placement separates variables; with W != 0 the left
// placement fails by a wide margin.
inline FullSolutionReport verify_full_solution(const PhysicalParams& p,
                                               const StationaryBasis& basis,
                                               const std::vector<double>& t_grid,
                                               const std::vector<double>& x_grid,
                                               double h = 1e-4) {
    qschrod_detail::validate(p);
    const Complex phase_exp{0.0, -p.E / p.hbar};
    const double c_xx = p.hbar / (2.0 * p.m);
    const double c_v = p.V / p.hbar;
    const Quaternion jw = Quaternion::unit_j() *
                          Quaternion{p.W.real() / p.hbar, p.W.imag() / p.hbar, 0, 0};
    const Quaternion qi = Quaternion::unit_i();
    FullSolutionReport rep{0.0, 0.0};
    for (int form = 0; form < 2; ++form) {
        const bool right_form = form == 0;
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const Quaternion& eta = basis.directions[k];
            const Complex& z = basis.exponents[k];
            auto psi = [&](double x, double t) {
                return qschrod_detail::wave(eta, z, phase_exp, x, t, right_form);
            };
            for (const double x : x_grid)
                for (const double t : t_grid) {
                    const Quaternion dt =
                        (psi(x, t + h) - psi(x, t - h)) * (0.5 / h);
                    const Quaternion dxx =
                        (psi(x + h, t) - 2.0 * psi(x, t) + psi(x - h, t)) *
                        (1.0 / (h * h));
                    const Quaternion res = dt - qi * dxx * c_xx +
                                           qi * psi(x, t) * c_v - jw * psi(x, t);
                    worst = std::max(worst, abs(res));
                }
        }
        (right_form ? rep.right_form_residual : rep.left_form_residual) = worst;
    }
    return rep;
}

} // namespace quatlin
