#pragma once

// Quaternionic spectral layer.  Everything here routes through the adjoint
// translations: H- and C-linear right eigenpairs come from the complex
// adjoint, coupled pairs of R-linear operators from the real adjoint, and
// Jordan data from rank staircases on the embedding side.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "quatlin/dense.hpp"
#include "quatlin/eigen_engine.hpp"
#include "quatlin/embed.hpp"
#include "quatlin/errors.hpp"
#include "quatlin/linops.hpp"
#include "quatlin/quaternion.hpp"

namespace quatlin {

// Right eigenpair M psi = psi z.  For H-linear operators z is the canonical
// representative of its similarity sphere (im >= 0); for C-linear operators
// z is an honest invariant and may have either sign.
struct EigenpairH {
    Complex z;
    VectorH psi;     // unit norm
    double residual; // ||M psi - psi z||
};

struct RightSpectrumC {
    std::vector<EigenpairH> pairs;       // 2n of them
    std::size_t independent_vectors;     // numerical geometric count
};

// M psi = lambda psi - mu phi,  M phi = lambda phi + mu psi,  mu >= 0.
struct CoupledEigenpair {
    double lambda = 0.0;
    double mu = 0.0;
    VectorH psi;
    VectorH phi;
    double residual = 0.0;
};

struct CoupledCoefficients {
    double a, b, c, d;
};

struct JordanBlocks {
    Complex eigenvalue;
    std::vector<int> sizes; // descending
};

// 2x2 rotation-block summary [[lambda, -mu], [mu, lambda]].
struct XBlock {
    double lambda;
    double mu;
};

struct JordanReport {
    std::vector<JordanBlocks> clusters;
    // Filled for R-linear inputs: the diagonal of the pseudo-triangular
    // form, one rotation block per complex conjugate pair (with
    // multiplicity) and the real eigenvalues.
    std::vector<XBlock> rotation_blocks;
    std::vector<double> real_eigenvalues;
    bool has_nilpotent_part = false;
};

struct CanonicalFormH {
    MatrixH s;         // columns are right eigenvectors
    MatrixH d;         // diagonal, complex entries with im >= 0
    MatrixH nilpotent; // zero on the success path
    std::vector<JordanBlocks> structure;
};

struct Triangularization {
    MatrixH u; // unitary
    MatrixH t; // upper triangular, diagonal im >= 0
    double residual;
};

namespace spectra_detail {

inline MatrixH column_matrix(const std::vector<VectorH>& cols) {
    const std::size_t n = cols.size();
    MatrixH s(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) s(i, j) = cols[j][i];
    return s;
}

inline VectorH normalized(VectorH v) {
    const double nv = norm(v);
    if (nv == 0.0) return v;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= 1.0 / nv;
    return v;
}

// Right-coefficient projection residue of v against the unit vectors in
// `basis` (modified Gram-Schmidt, done twice).
inline VectorH gs_residue(VectorH v, const std::vector<VectorH>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const VectorH& u : basis) {
            const Quaternion c = dot(u, v);
            v -= u * c;
        }
    return v;
}

inline double vec_residual_h(const MatrixH& m, const VectorH& psi, const Complex& z) {
    VectorH w = apply_h(m, psi) - psi * z;
    return norm(w);
}

inline double vec_residual_c(const MatrixC& m, const VectorH& psi, const Complex& z) {
    VectorH w = apply_c(m, psi) - psi * z;
    return norm(w);
}

struct Cluster {
    Complex center;
    std::vector<std::size_t> members;
};

// Group values by a union-find on the given radius; refuse when a gap falls
// in the ambiguous band [radius, 10*radius).
inline std::vector<Cluster> cluster_values(const std::vector<Complex>& vals,
                                           double radius) {
    const std::size_t m = vals.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(vals[i] - vals[j]) <= radius) parent[find(i)] = find(j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = std::abs(vals[i] - vals[j]);
            if (find(i) != find(j) && d < 10.0 * radius)
                throw ClusterAmbiguity(
                    "eigenvalue gap " + std::to_string(d) +
                    " falls inside the clustering tolerance band");
        }
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < m; ++i) {
        if (find(i) != i) continue;
        Cluster c;
        Complex sum{};
        for (std::size_t j = 0; j < m; ++j)
            if (find(j) == i) { c.members.push_back(j); sum += vals[j]; }
        c.center = sum * (1.0 / static_cast<double>(c.members.size()));
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

// Jordan block sizes of `e` at eigenvalue `center` from the nullity
// staircase of powers, using SVD ranks at rank_tol * sigma_max.
inline std::vector<int> rank_staircase(const ComplexMatrix& e, const Complex& center,
                                       std::size_t multiplicity, double rank_tol) {
    const std::size_t m = e.rows();
    ComplexMatrix b = e;
    for (std::size_t i = 0; i < m; ++i) b(i, i) -= center;
    std::vector<std::size_t> nullity; // nullity of b^k, k = 1...
    ComplexMatrix p = b;
    for (std::size_t k = 1; k <= multiplicity + 1; ++k) {
        const std::size_t nu = m - numerical_rank(p, rank_tol);
        nullity.push_back(nu);
        if (nu >= multiplicity) break;
        if (k > 1 && nu == nullity[k - 2]) break; // stabilized early
        p = p * b;
    }
    if (nullity.empty() || nullity.back() != multiplicity)
        throw ClusterAmbiguity("rank staircase does not match cluster multiplicity");
    std::vector<int> sizes;
    const auto nu_at = [&](std::size_t k) -> std::size_t {
        if (k == 0) return 0;
        return k <= nullity.size() ? nullity[k - 1] : nullity.back();
    };
    for (std::size_t k = 1; k <= nullity.size(); ++k) {
        const std::size_t geq_k = nu_at(k) - nu_at(k - 1);
        const std::size_t geq_k1 = nu_at(k + 1) - nu_at(k);
        for (std::size_t t = geq_k1; t < geq_k; ++t) sizes.push_back(static_cast<int>(k));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

template <class S>
std::vector<JordanBlocks> embedding_jordan(const DenseMatrix<S>& e,
                                           const std::vector<Complex>& vals,
                                           double rank_tol) {
    // Eigenvalues of a Jordan block of size k move like eps^(1/k) under
    // rounding, so the grouping radius sits far above the rank threshold.
    const double scale = std::max(1.0, frobenius_norm(e));
    const double radius = std::sqrt(rank_tol) * scale;
    const std::vector<Cluster> clusters = cluster_values(vals, radius);
    const ComplexMatrix ec = [&] {
        if constexpr (std::is_same_v<S, double>) return complexify(e);
        else return e;
    }();
    std::vector<JordanBlocks> out;
    for (const Cluster& c : clusters) {
        JordanBlocks jb;
        jb.eigenvalue = c.center;
        jb.sizes = rank_staircase(ec, c.center, c.members.size(), rank_tol);
        out.push_back(std::move(jb));
    }
    return out;
}

} // namespace spectra_detail

// ---------------------------------------------------------------------------
// right eigenpairs, H-linear

// Exactly n pairs with im(z) >= 0.  The 2n adjoint eigenvalues drop to n
// conjugate-class representatives; within a degenerate class, eigenvector
// pullbacks are chosen greedily for right-quaternionic independence.
inline std::vector<EigenpairH> right_spectrum(const MatrixH& m, double tol = 1e-8) {
    const std::size_t n = m.n();
    std::vector<EigenpairH> out;
    if (n == 0) return out;
    const ComplexMatrix e = complex_adjoint(m);
    const SpectrumResult s = eig_complex(e);
    const double scale = std::max(1.0, frobenius_norm(e));

    // canonical values, sorted; conjugate twins land adjacent
    std::vector<std::size_t> order(2 * n);
    std::iota(order.begin(), order.end(), 0);
    auto canon = [&](std::size_t t) {
        const Complex z = s.eigenvalues[t];
        return Complex{z.real(), std::abs(z.imag())};
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Complex x = canon(a), y = canon(b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
        return s.eigenvalues[a].imag() > s.eigenvalues[b].imag();
    });

    // group conjugate-paired positions into degenerate clusters
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // (begin, end) in order[]
    std::size_t begin = 0;
    for (std::size_t t = 2; t <= 2 * n; t += 2) {
        if (t == 2 * n ||
            std::abs(canon(order[t]) - canon(order[begin])) > 1e-8 * scale) {
            pairs.emplace_back(begin, t);
            begin = t;
        }
    }

    for (const auto& [lo, hi] : pairs) {
        if ((hi - lo) % 2 != 0)
            throw InternalConsistency("adjoint spectrum is not conjugate paired");
        const std::size_t count = (hi - lo) / 2; // quaternionic multiplicity
        Complex zc{};
        for (std::size_t t = lo; t < hi; ++t) zc += canon(order[t]);
        zc *= 1.0 / static_cast<double>(hi - lo);

        // candidates sorted im-descending already; prefer im > 0 members
        std::vector<VectorH> ortho;  // orthonormal probe basis
        std::vector<VectorH> chosen; // reported eigenvectors
        std::vector<VectorH> leftovers;
        for (std::size_t t = lo; t < hi && chosen.size() < count; ++t) {
            const std::size_t idx = order[t];
            VectorH psi = unstack_complex(s.eigenvectors[idx]);
            if (s.eigenvalues[idx].imag() < -1e-8 * scale) {
                // conjugate twin: rotate by j to flip the eigenvalue sign
                psi = psi * Quaternion::unit_j();
            }
            psi = spectra_detail::normalized(psi);
            const VectorH res = spectra_detail::gs_residue(psi, ortho);
            if (norm(res) > 1e-6) {
                ortho.push_back(spectra_detail::normalized(res));
                chosen.push_back(psi);
            } else {
                leftovers.push_back(psi);
            }
        }
        for (std::size_t t = 0; chosen.size() < count && t < leftovers.size(); ++t)
            chosen.push_back(leftovers[t]); // defective class: duplicates allowed
        for (const VectorH& psi : chosen) {
            EigenpairH p;
            p.z = zc;
            p.psi = psi;
            p.residual = spectra_detail::vec_residual_h(m, psi, zc);
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end(), [](const EigenpairH& a, const EigenpairH& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    if (out.size() != n)
        throw InternalConsistency("right spectrum count mismatch");
    const double bound = tol * std::max(frobenius_norm(m), 1e-30);
    for (const EigenpairH& p : out)
        if (p.residual > bound)
            throw NoConvergence("right eigenpair residual exceeds tolerance", {});
    return out;
}

// ---------------------------------------------------------------------------
// right eigenpairs, C-linear

// 2n pairs, no conjugate pairing; `independent_vectors` is the numerical
// rank of the adjoint eigenvector matrix (geometric count at scale 1e-6).
inline RightSpectrumC right_spectrum(const MatrixC& m, double tol = 1e-8) {
    const std::size_t n = m.n();
    RightSpectrumC out;
    out.independent_vectors = 0;
    if (n == 0) return out;
    const ComplexMatrix e = complex_adjoint(m);
    const SpectrumResult s = eig_complex(e);
    ComplexMatrix vmat(2 * n, 2 * n);
    for (std::size_t t = 0; t < 2 * n; ++t) {
        EigenpairH p;
        p.z = s.eigenvalues[t];
        p.psi = spectra_detail::normalized(unstack_complex(s.eigenvectors[t]));
        p.residual = spectra_detail::vec_residual_c(m, p.psi, p.z);
        out.pairs.push_back(std::move(p));
        for (std::size_t i = 0; i < 2 * n; ++i) vmat(i, t) = s.eigenvectors[t][i];
    }
    out.independent_vectors = numerical_rank(vmat, 1e-6);
    const double bound = tol * std::max(frobenius_norm(m), 1e-30);
    for (const EigenpairH& p : out.pairs)
        if (p.residual > bound)
            throw NoConvergence("right eigenpair residual exceeds tolerance", {});
    return out;
}

// ---------------------------------------------------------------------------
// coupled eigenpairs, R-linear

// One pair per conjugate class of the real adjoint: real eigenvalues give
// (lambda, 0, psi, 0), complex pairs give the real/imaginary split of the
// adjoint eigenvector.
inline std::vector<CoupledEigenpair> coupled_spectrum(const MatrixR& m,
                                                      double tol = 1e-8) {
    const std::size_t n = m.n();
    std::vector<CoupledEigenpair> out;
    if (n == 0) return out;
    const RealMatrix e = real_adjoint(m);
    const SpectrumResult s = eig_real(e);
    const double scale = std::max(1.0, frobenius_norm(e));
    const double tau = 1e-8 * scale;
    for (std::size_t t = 0; t < s.eigenvalues.size(); ++t) {
        const Complex z = s.eigenvalues[t];
        if (z.imag() < -tau) continue; // conjugate twin
        CoupledEigenpair p;
        const ComplexVector& v = s.eigenvectors[t];
        if (std::abs(z.imag()) <= tau) {
            RealVector re(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) re[i] = v[i].real();
            double nr = norm2(re);
            if (nr < 0.1) {
                for (std::size_t i = 0; i < v.size(); ++i) re[i] = v[i].imag();
                nr = norm2(re);
            }
            for (auto& x : re) x *= 1.0 / nr;
            p.lambda = z.real();
            p.mu = 0.0;
            p.psi = unstack_real(re);
            p.phi = VectorH(n);
        } else {
            RealVector re(v.size()), im(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                re[i] = v[i].real();
                im[i] = v[i].imag();
            }
            const double nr = std::sqrt(norm2(re) * norm2(re) + norm2(im) * norm2(im));
            for (auto& x : re) x *= 1.0 / nr;
            for (auto& x : im) x *= 1.0 / nr;
            p.lambda = z.real();
            p.mu = z.imag();
            p.psi = unstack_real(re);
            p.phi = unstack_real(im);
        }
        const VectorH r1 = apply_r(m, p.psi) - (p.psi * p.lambda - p.phi * p.mu);
        const VectorH r2 = apply_r(m, p.phi) - (p.phi * p.lambda + p.psi * p.mu);
        p.residual = std::max(norm(r1), norm(r2));
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const CoupledEigenpair& a, const CoupledEigenpair& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.mu < b.mu;
    });
    const double bound = tol * std::max(frobenius_norm(m), 1e-30);
    for (const CoupledEigenpair& p : out)
        if (p.residual > bound)
            throw NoConvergence("coupled pair residual exceeds tolerance", {});
    return out;
}

// ---------------------------------------------------------------------------
// coupled-coefficient reduction

struct CoupledReduction {
    double lambda;
    double mu;
};

// (a, b; c, d) -> (lambda, mu) with lambda +- i mu the block's eigenvalues.
// Requires a complex spectrum: (a+d)^2 - 4(ad - bc) < 0.
inline CoupledReduction reduce_coupled(const CoupledCoefficients& c) {
    const double disc = (c.a + c.d) * (c.a + c.d) - 4.0 * (c.a * c.d - c.b * c.c);
    if (disc >= 0.0)
        throw NonComplexSpectrum("coefficient block has real eigenvalues");
    return {0.5 * (c.a + c.d), 0.5 * std::sqrt(-disc)};
}

// ---------------------------------------------------------------------------
// Jordan structure

// H-linear: quaternionic block report.  Complex clusters keep their
// embedding blocks; real clusters carry doubled data and are halved.
inline JordanReport jordan_structure(const MatrixH& m, double rank_tol = 1e-9) {
    const ComplexMatrix e = complex_adjoint(m);
    const SpectrumResult s = eig_complex(e);
    const std::vector<JordanBlocks> emb =
        spectra_detail::embedding_jordan(e, s.eigenvalues, rank_tol);
    const double scale = std::max(1.0, frobenius_norm(e));
    const double radius = std::sqrt(rank_tol) * scale;
    JordanReport rep;
    for (const JordanBlocks& jb : emb) {
        if (jb.eigenvalue.imag() < -radius) continue; // conjugate duplicate
        JordanBlocks q;
        if (std::abs(jb.eigenvalue.imag()) <= radius) {
            q.eigenvalue = Complex{jb.eigenvalue.real(), 0.0};
            // each block appears twice in the embedding
            std::vector<int> sizes = jb.sizes;
            std::vector<int> halved;
            for (std::size_t t = 0; t + 1 < sizes.size(); t += 2) {
                if (sizes[t] != sizes[t + 1])
                    throw ClusterAmbiguity("real cluster is not block paired");
                halved.push_back(sizes[t]);
            }
            if (sizes.size() % 2 != 0)
                throw ClusterAmbiguity("real cluster has odd multiplicity");
            q.sizes = std::move(halved);
        } else {
            q.eigenvalue = jb.eigenvalue;
            q.sizes = jb.sizes;
        }
        for (int t : q.sizes)
            if (t > 1) rep.has_nilpotent_part = true;
        rep.clusters.push_back(std::move(q));
    }
    return rep;
}

// C-linear: blocks live on the 2n complex adjoint.
inline JordanReport jordan_structure(const MatrixC& m, double rank_tol = 1e-9) {
    const ComplexMatrix e = complex_adjoint(m);
    const SpectrumResult s = eig_complex(e);
    JordanReport rep;
    rep.clusters = spectra_detail::embedding_jordan(e, s.eigenvalues, rank_tol);
    for (const JordanBlocks& jb : rep.clusters)
        for (int t : jb.sizes)
            if (t > 1) rep.has_nilpotent_part = true;
    return rep;
}

// R-linear: blocks on the 4n real adjoint plus the pseudo-triangular
// diagonal summary (rotation blocks and real eigenvalues).
inline JordanReport jordan_structure(const MatrixR& m, double rank_tol = 1e-9) {
    const RealMatrix e = real_adjoint(m);
    const SpectrumResult s = eig_real(e);
    JordanReport rep;
    rep.clusters = spectra_detail::embedding_jordan(e, s.eigenvalues, rank_tol);
    const double scale = std::max(1.0, frobenius_norm(e));
    const double radius = std::sqrt(rank_tol) * scale;
    for (const JordanBlocks& jb : rep.clusters) {
        const std::size_t mult = [&] {
            std::size_t k = 0;
            for (int t : jb.sizes) k += static_cast<std::size_t>(t);
            return k;
        }();
        for (int t : jb.sizes)
            if (t > 1) rep.has_nilpotent_part = true;
        if (std::abs(jb.eigenvalue.imag()) <= radius) {
            for (std::size_t t = 0; t < mult; ++t)
                rep.real_eigenvalues.push_back(jb.eigenvalue.real());
        } else if (jb.eigenvalue.imag() > 0.0) {
            for (std::size_t t = 0; t < mult; ++t)
                rep.rotation_blocks.push_back({jb.eigenvalue.real(), jb.eigenvalue.imag()});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// canonical diagonal blocks for R-linear operators (n = 1)

// kind 1: two conjugate pairs       (lambdas = {l0, l1},     mus = {m0, m1})
// kind 2: one pair plus two reals   (lambdas = {l0, l1, l2}, mus = {m0})
// kind 3: four reals                (lambdas = {l0..l3},     mus = {})
// The real adjoint of the result reproduces the corresponding 4x4 diagonal
// pattern exactly: rotation blocks [[l,-mu],[mu,l]] and plain reals.
inline MatrixR canonical_d_block(int kind, const std::vector<double>& lambdas,
                                 const std::vector<double>& mus) {
    MatrixR r(1);
    auto q = [](double s, double i2, double j2, double k2) {
        return Quaternion{s, i2, j2, k2};
    };
    switch (kind) {
        case 1: {
            if (lambdas.size() != 2 || mus.size() != 2)
                throw ValidationError("kind 1 wants two (lambda, mu) pairs");
            const double lm = lambdas[0], l1 = lambdas[1];
            const double mm = mus[0], m1 = mus[1];
            r.m0(0, 0) = q(0.5 * (lm + l1), 0.5 * (mm + m1), 0, 0);
            r.m1(0, 0) = q(0.5 * (mm - m1), 0.5 * (l1 - lm), 0, 0);
            break;
        }
        case 2: {
            if (lambdas.size() != 3 || mus.size() != 1)
                throw ValidationError("kind 2 wants one pair and two reals");
            const double lm = lambdas[0], l1 = lambdas[1], l2 = lambdas[2];
            const double mm = mus[0];
            r.m0(0, 0) = q(0.5 * lm + 0.25 * (l1 + l2), 0.5 * mm, 0, 0);
            r.m1(0, 0) = q(0.5 * mm, -0.5 * lm + 0.25 * (l1 + l2), 0, 0);
            r.m2(0, 0) = q(0, 0, 0.25 * (l2 - l1), 0);
            r.m3(0, 0) = q(0, 0, 0, 0.25 * (l1 - l2));
            break;
        }
        case 3: {
            if (lambdas.size() != 4 || !mus.empty())
                throw ValidationError("kind 3 wants four reals");
            const double l0 = lambdas[0], l1 = lambdas[1], l2 = lambdas[2],
                         l3 = lambdas[3];
            r.m0(0, 0) = q(0.25 * (l0 + l1 + l2 + l3), 0, 0, 0);
            r.m1(0, 0) = q(0, 0.25 * (-l0 - l1 + l2 + l3), 0, 0);
            r.m2(0, 0) = q(0, 0, 0.25 * (-l0 + l1 - l2 + l3), 0);
            r.m3(0, 0) = q(0, 0, 0, 0.25 * (-l0 + l1 + l2 - l3));
            break;
        }
        default:
            throw ValidationError("canonical_d_block kind must be 1, 2 or 3");
    }
    return r;
}

// ---------------------------------------------------------------------------
// diagonalization and triangularization, H-linear

inline MatrixH inverse_via_adjoint(const MatrixH& m) {
    return from_complex_adjoint_h(inverse(complex_adjoint(m)), 1e-6);
}

// M = S D S^{-1} with D diagonal (im >= 0 entries).  Throws Defective with
// the detected block structure when the eigenvector matrix is rank
// deficient, too ill conditioned, or reconstruction misses the tolerance.
inline CanonicalFormH diagonalize(const MatrixH& m, double tol = 1e-8,
                                  double cond_cap = 1e12) {
    const std::size_t n = m.n();
    const std::vector<EigenpairH> pairs = right_spectrum(m, tol);
    std::vector<VectorH> cols;
    cols.reserve(n);
    for (const EigenpairH& p : pairs) cols.push_back(p.psi);
    MatrixH s = spectra_detail::column_matrix(cols);
    MatrixH d(n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = from_complex(pairs[k].z);

    auto defect = [&]() -> Defective {
        std::vector<int> structure;
        try {
            const JordanReport rep = jordan_structure(m);
            for (const JordanBlocks& jb : rep.clusters)
                for (int t : jb.sizes) structure.push_back(t);
        } catch (const ClusterAmbiguity&) {
            // structure stays empty when even the staircase refuses
        }
        return Defective("operator is not diagonalizable at tolerance", structure);
    };

    // 1e-6 matches the geometric-count threshold: defective duplicates from
    // inverse iteration agree to ~sqrt(eps), well below it
    const ComplexMatrix se = complex_adjoint(s);
    if (numerical_rank(se, 1e-6) < 2 * n) throw defect();
    const ComplexMatrix sinv_e = inverse(se);
    if (frobenius_norm(se) * frobenius_norm(sinv_e) > cond_cap) throw defect();
    const MatrixH sinv = from_complex_adjoint_h(sinv_e, 1e-6);
    const MatrixH recon = mul_h(s, mul_h(d, sinv));
    const double resid = frobenius_norm(recon - m);
    if (resid > tol * std::max(frobenius_norm(m), 1e-30)) throw defect();

    CanonicalFormH out;
    out.s = std::move(s);
    out.d = std::move(d);
    out.nilpotent = MatrixH(n);
    for (std::size_t k = 0; k < n; ++k) {
        bool merged = false;
        for (JordanBlocks& jb : out.structure)
            if (std::abs(jb.eigenvalue - pairs[k].z) <= 1e-8 * (1.0 + std::abs(jb.eigenvalue))) {
                jb.sizes.push_back(1);
                merged = true;
                break;
            }
        if (!merged) out.structure.push_back({pairs[k].z, {1}});
    }
    return out;
}

// Unitary triangularization by eigenpair deflation with right-coefficient
// Gram-Schmidt completion.
inline Triangularization triangularize(const MatrixH& m, double tol = 1e-8) {
    const std::size_t n = m.n();
    MatrixH u = MatrixH::identity(n);
    MatrixH t = m;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t nk = n - k;
        MatrixH sub(nk);
        for (std::size_t i = 0; i < nk; ++i)
            for (std::size_t j = 0; j < nk; ++j) sub(i, j) = t(k + i, k + j);
        const std::vector<EigenpairH> pairs = right_spectrum(sub, 1e-6);
        const EigenpairH& lead = pairs.front();

        // complete lead.psi to a unitary basis of H^{nk}
        std::vector<VectorH> basis;
        basis.push_back(spectra_detail::normalized(lead.psi));
        for (std::size_t c = 0; c < nk && basis.size() < nk; ++c) {
            VectorH e(nk);
            e[c] = Quaternion{1.0};
            const VectorH res = spectra_detail::gs_residue(e, basis);
            if (norm(res) > 1e-8) basis.push_back(spectra_detail::normalized(res));
        }
        if (basis.size() != nk)
            throw InternalConsistency("unitary completion fell short");
        const MatrixH uk = spectra_detail::column_matrix(basis);
        MatrixH ufull = MatrixH::identity(n);
        for (std::size_t i = 0; i < nk; ++i)
            for (std::size_t j = 0; j < nk; ++j) ufull(k + i, k + j) = uk(i, j);
        u = mul_h(u, ufull);
        t = mul_h(adjoint_h(ufull), mul_h(t, ufull));
        for (std::size_t i = k + 1; i < n; ++i) t(i, k) = Quaternion{};
        // canonical diagonal entry
        t(k, k) = from_complex(lead.z);
    }
    if (n > 0) {
        // rephase the last diagonal entry to its canonical representative
        const Rephasing r = rephase_to_complex(t(n - 1, n - 1));
        MatrixH ulast = MatrixH::identity(n);
        ulast(n - 1, n - 1) = r.u;
        u = mul_h(u, ulast);
        t = mul_h(adjoint_h(ulast), mul_h(t, ulast));
        t(n - 1, n - 1) = from_complex(r.z);
    }
    Triangularization out;
    const MatrixH recon = mul_h(adjoint_h(u), mul_h(m, u));
    out.residual = frobenius_norm(recon - t);
    out.u = std::move(u);
    out.t = std::move(t);
    const double bound = std::max(tol, 1e-9) * std::max(frobenius_norm(m), 1e-30);
    if (out.residual > bound * 10.0)
        throw NoConvergence("triangularization residual exceeds tolerance", {});
    return out;
}

// ---------------------------------------------------------------------------
// coupled <-> right-complex equivalence for C-linear operators

// Rebuild a right eigenpair from a coupled pair.  The generic combination
// is psi + phi i with eigenvalue lambda + i mu; when it vanishes the pair
// came from a conjugate-eigenvalue solution and phi alone is an eigenvector
// for lambda - i mu.
inline EigenpairH coupled_to_right_eigenpair(const MatrixC& m,
                                             const CoupledEigenpair& pair,
                                             double tol = 1e-8) {
    const std::size_t n = m.n();
    if (pair.psi.size() != n || pair.phi.size() != n)
        throw DimensionMismatch("coupled pair size mismatch");
    const double scale = std::max(norm(pair.psi), norm(pair.phi));
    if (scale == 0.0) throw DegeneratePair("coupled pair is zero");
    VectorH xi = pair.psi + pair.phi * Quaternion::unit_i();
    const Complex z{pair.lambda, pair.mu};
    EigenpairH out;
    if (norm(xi) > 1e-6 * scale) {
        out.z = z;
        out.psi = spectra_detail::normalized(xi);
    } else {
        if (norm(pair.phi) <= 1e-12 * scale)
            throw DegeneratePair("both recombinations of the coupled pair vanish");
        out.z = std::conj(z);
        out.psi = spectra_detail::normalized(pair.phi);
    }
    out.residual = spectra_detail::vec_residual_c(m, out.psi, out.z);
    if (out.residual > std::max(tol, 1e-8) * std::max(frobenius_norm(m), 1e-30) * 100.0)
        throw ValidationError("coupled pair does not satisfy the eigen equations");
    return out;
}

} // namespace quatlin
