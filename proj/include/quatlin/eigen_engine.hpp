#pragma once

// Dense nonsymmetric eigensolver for real and complex matrices: powers-of-2
// balancing, Householder Hessenberg reduction, shifted QR iteration
// (Wilkinson single shift for complex, Francis double shift for real), and
// inverse iteration on the original matrix for eigenvectors.
//
// Scope is desk-scale (m <= ~64).  Eigenvalues are reported sorted
// lexicographically by (re, im) ascending; sorting is stable so equal
// values keep discovery order.  Every reported pair carries its residual
// ||Av - lambda v|| (unit v) and the iteration counts that produced it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "quatlin/dense.hpp"
#include "quatlin/errors.hpp"

namespace quatlin {

struct SpectrumResult {
    std::vector<std::complex<double>> eigenvalues; // sorted by (re, im)
    std::vector<ComplexVector> eigenvectors;       // unit 2-norm, aligned
    std::vector<double> residuals;                 // ||Av - lambda v||
    std::vector<int> qr_sweeps;                    // QR steps charged to the value
    std::vector<int> inverse_steps;                // inverse-iteration steps
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what,
                  std::vector<std::complex<double>> partial)
        : Error(what), partial_eigenvalues(std::move(partial)) {}
    std::vector<std::complex<double>> partial_eigenvalues;
};

namespace engine_detail {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class S>
void check_finite(const DenseMatrix<S>& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!std::isfinite(std::abs(a(i, j))))
                throw ValidationError("matrix has a non-finite entry");
}

// Diagonal similarity scaling with powers of two (exact in floating point).
template <class S>
DenseMatrix<S> balance(DenseMatrix<S> a) {
    const std::size_t m = a.rows();
    bool done = false;
    int guard = 0;
    while (!done && guard++ < 100) {
        done = true;
        for (std::size_t i = 0; i < m; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / 2.0) { f *= 2.0; c *= 4.0; }
            while (c > r * 2.0) { f /= 2.0; c /= 4.0; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double inv = 1.0 / f;
                for (std::size_t j = 0; j < m; ++j) a(i, j) *= inv;
                for (std::size_t j = 0; j < m; ++j) a(j, i) *= f;
            }
        }
    }
    return a;
}

// Householder reduction to upper Hessenberg form (in place).
template <class S>
void hessenberg(DenseMatrix<S>& a) {
    const std::size_t m = a.rows();
    if (m < 3) return;
    std::vector<S> v(m);
    for (std::size_t k = 0; k + 2 < m; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < m; ++i) colnorm += detail::abs_sq(a(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        S x0 = a(k + 1, k);
        S alpha;
        const double ax0 = std::abs(x0);
        if (ax0 == 0.0) alpha = S{-colnorm};
        else alpha = x0 * S{-colnorm / ax0};
        double vnorm_sq = 0.0;
        for (std::size_t i = k + 1; i < m; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm_sq += detail::abs_sq(v[i]);
        }
        if (vnorm_sq == 0.0) continue;
        const double inv = 1.0 / std::sqrt(vnorm_sq);
        for (std::size_t i = k + 1; i < m; ++i) v[i] *= inv;
        // left: rows k+1..m-1
        for (std::size_t j = k; j < m; ++j) {
            S s{};
            for (std::size_t i = k + 1; i < m; ++i)
                s += detail::conj_scalar(v[i]) * a(i, j);
            s *= 2.0;
            for (std::size_t i = k + 1; i < m; ++i) a(i, j) -= s * v[i];
        }
        // right: columns k+1..m-1
        for (std::size_t i = 0; i < m; ++i) {
            S s{};
            for (std::size_t j = k + 1; j < m; ++j) s += a(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < m; ++j)
                a(i, j) -= s * detail::conj_scalar(v[j]);
        }
        for (std::size_t i = k + 2; i < m; ++i) a(i, k) = S{};
    }
}

inline std::complex<double> wilkinson_shift(const std::complex<double>& a,
                                            const std::complex<double>& b,
                                            const std::complex<double>& c,
                                            const std::complex<double>& d) {
    const std::complex<double> tr = a + d;
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    const std::complex<double> l1 = 0.5 * (tr + disc);
    const std::complex<double> l2 = 0.5 * (tr - disc);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// Eigenvalues of a complex upper Hessenberg matrix via explicit shifted QR
// with Givens rotations.  `sweeps[t]` records the QR steps charged to the
// t-th converged eigenvalue (in discovery order).
inline std::vector<std::complex<double>> qr_eigenvalues(ComplexMatrix h,
                                                        std::vector<int>& sweeps) {
    using C = std::complex<double>;
    const std::size_t m = h.rows();
    std::vector<C> eig;
    eig.reserve(m);
    sweeps.assign(m, 0);
    if (m == 0) return eig;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(m) - 1;
    int iter = 0;
    std::vector<C> cs(m), sn(m);
    while (hi >= 0) {
        // deflation scan
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= kEps * std::max(scale, 1e-300)) { h(lo, lo - 1) = C{}; break; }
            --lo;
        }
        if (lo == hi) {
            sweeps[eig.size()] = iter;
            eig.push_back(h(hi, hi));
            --hi;
            iter = 0;
            continue;
        }
        if (lo == hi - 1) {
            const C a = h(lo, lo), b = h(lo, hi), c = h(hi, lo), d = h(hi, hi);
            const C tr = a + d;
            const C disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            C l1 = 0.5 * (tr + disc);
            const C l2 = 0.5 * (tr - disc);
            if (std::abs(l1) < std::abs(l2)) l1 = l2;
            const C other = (std::abs(l1) > 0.0) ? (a * d - b * c) / l1 : 0.5 * (tr - disc);
            sweeps[eig.size()] = iter;
            eig.push_back(other);
            eig.push_back(l1);
            hi -= 2;
            iter = 0;
            continue;
        }
        ++iter;
        if (iter > 30 * static_cast<int>(hi - lo + 1))
            throw NoConvergence("complex QR iteration exceeded its cap", eig);
        C sigma;
        if (iter % 10 == 0) {
            // exceptional shift when stalled
            sigma = h(hi, hi) + C{0.75 * std::abs(h(hi, hi - 1)), 0.0};
        } else {
            sigma = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi),
                                    h(hi, hi - 1), h(hi, hi));
        }
        for (std::ptrdiff_t t = lo; t <= hi; ++t) h(t, t) -= sigma;
        // QR by Givens on the active block, then RQ
        for (std::ptrdiff_t t = lo; t < hi; ++t) {
            const C f = h(t, t), g = h(t + 1, t);
            const double r = std::hypot(std::abs(f), std::abs(g));
            if (r == 0.0) { cs[t] = C{1.0}; sn[t] = C{}; continue; }
            C c_, s_;
            const double af = std::abs(f);
            if (af == 0.0) { c_ = C{}; s_ = C{1.0}; }
            else {
                c_ = C{af / r};
                s_ = (f / af) * std::conj(g) * (1.0 / r);
            }
            cs[t] = c_; sn[t] = s_;
            for (std::ptrdiff_t j = t; j <= hi; ++j) {
                const C u = h(t, j), w = h(t + 1, j);
                h(t, j) = c_ * u + s_ * w;
                h(t + 1, j) = -std::conj(s_) * u + c_ * w;
            }
        }
        for (std::ptrdiff_t t = lo; t < hi; ++t) {
            const C c_ = cs[t], s_ = sn[t];
            const std::ptrdiff_t top = std::min<std::ptrdiff_t>(t + 2, hi);
            for (std::ptrdiff_t i = lo; i <= top; ++i) {
                const C u = h(i, t), w = h(i, t + 1);
                h(i, t) = c_ * u + std::conj(s_) * w;
                h(i, t + 1) = -s_ * u + c_ * w;
            }
        }
        for (std::ptrdiff_t t = lo; t <= hi; ++t) h(t, t) += sigma;
    }
    return eig;
}

// Eigenvalues of a real upper Hessenberg matrix via implicit Francis
// double-shift steps.  Complex pairs come out of 2x2 blocks and are exact
// conjugates by construction.
inline std::vector<std::complex<double>> francis_eigenvalues(RealMatrix h,
                                                             std::vector<int>& sweeps) {
    using C = std::complex<double>;
    const std::size_t m = h.rows();
    std::vector<C> eig;
    eig.reserve(m);
    sweeps.assign(m, 0);
    if (m == 0) return eig;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(m) - 1;
    int iter = 0;
    auto emit_2x2 = [&](std::ptrdiff_t p, std::ptrdiff_t q) {
        const double a = h(p, p), b = h(p, q), c = h(q, p), d = h(q, q);
        const double u = 0.5 * (a + d);
        const double disc = 0.25 * (a - d) * (a - d) + b * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double l1 = (u >= 0.0) ? u + sq : u - sq;
            const double l2 = (l1 != 0.0) ? (a * d - b * c) / l1 : u - sq;
            eig.emplace_back(l2, 0.0);
            eig.emplace_back(l1, 0.0);
        } else {
            const double mu = std::sqrt(-disc);
            eig.emplace_back(u, -mu);
            eig.emplace_back(u, mu);
        }
    };
    while (hi >= 0) {
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= kEps * std::max(scale, 1e-300)) { h(lo, lo - 1) = 0.0; break; }
            --lo;
        }
        if (lo == hi) {
            sweeps[eig.size()] = iter;
            eig.emplace_back(h(hi, hi), 0.0);
            --hi;
            iter = 0;
            continue;
        }
        if (lo == hi - 1) {
            sweeps[eig.size()] = iter;
            emit_2x2(lo, hi);
            hi -= 2;
            iter = 0;
            continue;
        }
        ++iter;
        if (iter > 30 * static_cast<int>(hi - lo + 1))
            throw NoConvergence("real QR iteration exceeded its cap", eig);
        double s_tr, s_det;
        if (iter % 10 == 0) {
            const double sv = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            s_tr = 1.5 * sv;
            s_det = sv * sv;
        } else {
            s_tr = h(hi - 1, hi - 1) + h(hi, hi);
            s_det = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
        }
        // first column of (H^2 - s_tr H + s_det I) e1 on the active block
        double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo)
                   - s_tr * h(lo, lo) + s_det;
        double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s_tr);
        double z = h(lo + 1, lo) * h(lo + 2, lo + 1);
        for (std::ptrdiff_t k = lo - 1; k <= hi - 3; ++k) {
            // Householder zeroing (y, z) against x; acts on rows/cols k+1..k+3
            double vr[3] = {x, y, z};
            const double scl = std::abs(x) + std::abs(y) + std::abs(z);
            if (scl != 0.0) { vr[0] /= scl; vr[1] /= scl; vr[2] /= scl; }
            double nrm = std::sqrt(vr[0] * vr[0] + vr[1] * vr[1] + vr[2] * vr[2]);
            if (nrm != 0.0) {
                if (vr[0] < 0.0) nrm = -nrm;
                vr[0] += nrm;
                const double vn = std::sqrt(vr[0] * vr[0] + vr[1] * vr[1] + vr[2] * vr[2]);
                if (vn != 0.0) {
                    vr[0] /= vn; vr[1] /= vn; vr[2] /= vn;
                    const std::ptrdiff_t r1 = k + 1, r2 = k + 2, r3 = k + 3;
                    const std::ptrdiff_t jstart = std::max(lo, k);
                    for (std::ptrdiff_t j = jstart; j <= hi; ++j) {
                        const double s = 2.0 * (vr[0] * h(r1, j) + vr[1] * h(r2, j)
                                                + vr[2] * h(r3, j));
                        h(r1, j) -= s * vr[0];
                        h(r2, j) -= s * vr[1];
                        h(r3, j) -= s * vr[2];
                    }
                    const std::ptrdiff_t iend = std::min(hi, k + 4);
                    for (std::ptrdiff_t i = lo; i <= iend; ++i) {
                        const double s = 2.0 * (vr[0] * h(i, r1) + vr[1] * h(i, r2)
                                                + vr[2] * h(i, r3));
                        h(i, r1) -= s * vr[0];
                        h(i, r2) -= s * vr[1];
                        h(i, r3) -= s * vr[2];
                    }
                }
            }
            x = h(k + 2, k + 1);
            y = h(k + 3, k + 1);
            z = (k + 4 <= hi) ? h(k + 4, k + 1) : 0.0;
        }
        // final 2x2 rotation zeroing the leftover bulge entry
        {
            const double f = x, g = y;
            const double r = std::hypot(f, g);
            if (r != 0.0) {
                const double c_ = f / r, s_ = g / r;
                const std::ptrdiff_t r1 = hi - 1, r2 = hi;
                for (std::ptrdiff_t j = hi - 2; j <= hi; ++j) {
                    const double u = h(r1, j), w = h(r2, j);
                    h(r1, j) = c_ * u + s_ * w;
                    h(r2, j) = -s_ * u + c_ * w;
                }
                for (std::ptrdiff_t i = lo; i <= hi; ++i) {
                    const double u = h(i, r1), w = h(i, r2);
                    h(i, r1) = c_ * u + s_ * w;
                    h(i, r2) = -s_ * u + c_ * w;
                }
            }
        }
    }
    return eig;
}

// Fix the overall phase: largest-magnitude entry becomes real nonnegative.
inline void normalize_phase(ComplexVector& v) {
    double best = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best * (1.0 + 1e-12)) { best = a; idx = i; }
    }
    if (best == 0.0) return;
    const std::complex<double> phase = std::conj(v[idx]) / best;
    for (auto& x : v) x *= phase;
}

inline double residual_of(const ComplexMatrix& a, const std::complex<double>& lambda,
                          const ComplexVector& v) {
    ComplexVector w = a.apply(v);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lambda * v[i];
    return norm2(w);
}

// Inverse iteration with the converged shift on the original matrix.
// `avoid` holds eigenvectors already computed for (numerically) the same
// eigenvalue; iterates are deflated against them so repeated eigenvalues
// yield a spanning set.  If deflated iteration cannot meet the tolerance
// (defective eigenvalue: there is no further eigendirection), the plain
// iterate is returned instead.
inline ComplexVector inverse_iteration(const ComplexMatrix& a,
                                       std::complex<double>& lambda,
                                       std::size_t start, double anorm,
                                       int& steps, double& resid,
                                       const std::vector<const ComplexVector*>& avoid = {}) {
    using C = std::complex<double>;
    const std::size_t m = a.rows();
    ComplexMatrix b = a;
    for (std::size_t i = 0; i < m; ++i) b(i, i) -= lambda;
    const double floor = kEps * std::max(anorm, 1e-30);
    auto f = lu_factor(b, floor);
    auto deflate = [&](ComplexVector& x) {
        for (const ComplexVector* u : avoid) {
            C proj{};
            for (std::size_t i = 0; i < m; ++i) proj += std::conj((*u)[i]) * x[i];
            for (std::size_t i = 0; i < m; ++i) x[i] -= proj * (*u)[i];
        }
    };
    // start vectors: the indexed basis vector first (keeps diagonal inputs
    // on the standard basis), then spread-out fallbacks for the cases where
    // a basis start is exactly orthogonal to the target direction
    auto make_start = [&](int attempt) {
        ComplexVector x(m, C{});
        if (attempt == 0) {
            x[start % m] = C{1.0};
        } else if (attempt == 1) {
            const double s = 1.0 / std::sqrt(static_cast<double>(m));
            std::fill(x.begin(), x.end(), C{s});
        } else {
            std::uint64_t state = 0x9e3779b97f4a7c15ULL + start;
            for (std::size_t i = 0; i < m; ++i) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                x[i] = C{1.0 + static_cast<double>(state >> 40) * 1e-7, 0.0};
            }
            const double nx = norm2(x);
            for (auto& t : x) t *= 1.0 / nx;
        }
        return x;
    };
    ComplexVector best = make_start(0);
    double best_res = residual_of(a, lambda, best);
    steps = 0;
    const double target = 10.0 * kEps * std::max(anorm, 1e-30);
    // pass 0 runs deflated against `avoid`; pass 1 (defective fallback)
    // runs plain and may legitimately duplicate an earlier direction
    for (int pass = avoid.empty() ? 1 : 0; pass < 2; ++pass) {
        for (int attempt = 0; attempt < 3 && best_res > target; ++attempt) {
            ComplexVector x = make_start(attempt);
            if (pass == 0) {
                deflate(x);
                const double nx = norm2(x);
                if (nx < 1e-8) continue;
                for (auto& t : x) t *= 1.0 / nx;
            }
            for (int it = 0; it < 6; ++it) {
                ComplexVector y = lu_solve(f, x);
                if (pass == 0) deflate(y);
                const double ny = norm2(y);
                if (!(ny > 0.0) || !std::isfinite(ny)) break;
                for (auto& t : y) t *= 1.0 / ny;
                x = y;
                ++steps;
                const double r = residual_of(a, lambda, x);
                if (r < best_res) { best_res = r; best = x; }
                if (r <= target) break;
            }
        }
        if (best_res <= target) break;
    }
    // Rayleigh refinement when the QR shift is slightly off; a refinement
    // only, so reject corrections big enough to be a different eigenvalue
    if (best_res > 1e-10 * std::max(anorm, 1e-30)) {
        C num{}, den{};
        for (std::size_t i = 0; i < m; ++i) {
            C s{};
            for (std::size_t j = 0; j < m; ++j) s += a(i, j) * best[j];
            num += std::conj(best[i]) * s;
            den += std::conj(best[i]) * best[i];
        }
        if (std::abs(den) > 0.0) {
            const C ray = num / den;
            const double r2 = residual_of(a, ray, best);
            if (r2 < best_res && std::abs(ray - lambda) <= 1e-6 * std::max(anorm, 1.0)) {
                best_res = r2;
                lambda = ray;
            }
        }
    }
    resid = best_res;
    normalize_phase(best);
    return best;
}

} // namespace engine_detail

// Eigenvalues + eigenvectors of a dense complex matrix.  Throws
// NoConvergence (with the values found so far) past the iteration cap.
inline SpectrumResult eig_complex(const ComplexMatrix& a, double tol = 1e-10) {
    using C = std::complex<double>;
    if (a.rows() != a.cols()) throw DimensionMismatch("eig_complex wants a square matrix");
    engine_detail::check_finite(a);
    const std::size_t m = a.rows();
    SpectrumResult out;
    if (m == 0) return out;
    const double anorm = frobenius_norm(a);
    ComplexMatrix h = engine_detail::balance(a);
    engine_detail::hessenberg(h);
    std::vector<int> sweeps;
    std::vector<C> vals = engine_detail::qr_eigenvalues(std::move(h), sweeps);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (vals[x].real() != vals[y].real()) return vals[x].real() < vals[y].real();
        return vals[x].imag() < vals[y].imag();
    });

    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m);
    out.residuals.resize(m);
    out.qr_sweeps.resize(m);
    out.inverse_steps.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        C lambda = vals[order[t]];
        int steps = 0;
        double resid = 0.0;
        std::vector<const ComplexVector*> avoid;
        for (std::size_t u = 0; u < t; ++u)
            if (std::abs(out.eigenvalues[u] - lambda) <= 1e-8 * std::max(anorm, 1.0))
                avoid.push_back(&out.eigenvectors[u]);
        out.eigenvectors[t] =
            engine_detail::inverse_iteration(a, lambda, t, anorm, steps, resid, avoid);
        out.eigenvalues[t] = lambda;
        out.residuals[t] = resid;
        out.qr_sweeps[t] = sweeps[order[t]];
        out.inverse_steps[t] = steps;
        if (resid > tol * std::max(anorm, 1e-30))
            throw NoConvergence("eigenvector residual exceeds tolerance",
                                out.eigenvalues);
    }
    return out;
}

// Real analogue; the spectrum is closed under conjugation by construction
// and conjugate twins share (conjugated) eigenvectors.
inline SpectrumResult eig_real(const RealMatrix& a, double tol = 1e-10) {
    using C = std::complex<double>;
    if (a.rows() != a.cols()) throw DimensionMismatch("eig_real wants a square matrix");
    engine_detail::check_finite(a);
    const std::size_t m = a.rows();
    SpectrumResult out;
    if (m == 0) return out;
    const double anorm = frobenius_norm(a);
    RealMatrix h = engine_detail::balance(a);
    engine_detail::hessenberg(h);
    std::vector<int> sweeps;
    std::vector<C> vals = engine_detail::francis_eigenvalues(std::move(h), sweeps);

    const ComplexMatrix ac = complexify(a);

    // compute vectors in discovery order so conjugate twins can share work
    std::vector<ComplexVector> vecs(m);
    std::vector<double> resid(m);
    std::vector<int> isteps(m);
    for (std::size_t t = 0; t < m; ++t) {
        if (t > 0 && vals[t] == std::conj(vals[t - 1]) && vals[t].imag() > 0.0) {
            vecs[t].resize(m);
            for (std::size_t i = 0; i < m; ++i) vecs[t][i] = std::conj(vecs[t - 1][i]);
            engine_detail::normalize_phase(vecs[t]);
            resid[t] = engine_detail::residual_of(ac, vals[t], vecs[t]);
            isteps[t] = 0;
            continue;
        }
        std::vector<const ComplexVector*> avoid;
        for (std::size_t u = 0; u < t; ++u)
            if (std::abs(vals[u] - vals[t]) <= 1e-8 * std::max(anorm, 1.0))
                avoid.push_back(&vecs[u]);
        vecs[t] = engine_detail::inverse_iteration(ac, vals[t], t, anorm, isteps[t],
                                                   resid[t], avoid);
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (vals[x].real() != vals[y].real()) return vals[x].real() < vals[y].real();
        return vals[x].imag() < vals[y].imag();
    });

    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m);
    out.residuals.resize(m);
    out.qr_sweeps.resize(m);
    out.inverse_steps.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t s = order[t];
        out.eigenvalues[t] = vals[s];
        out.eigenvectors[t] = vecs[s];
        out.residuals[t] = resid[s];
        out.qr_sweeps[t] = sweeps[s];
        out.inverse_steps[t] = isteps[s];
        if (resid[s] > tol * std::max(anorm, 1e-30))
            throw NoConvergence("eigenvector residual exceeds tolerance",
                                out.eigenvalues);
    }
    return out;
}

} // namespace quatlin
