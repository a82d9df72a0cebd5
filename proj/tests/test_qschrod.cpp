#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "quatlin/qschrod.hpp"
#include "test_helpers.hpp"

using namespace quatlin;

namespace {
const Quaternion qi = Quaternion::unit_i();
const Quaternion qj = Quaternion::unit_j();

std::vector<Complex> exps_of(const StationaryBasis& b) {
    return {b.exponents.begin(), b.exponents.end()};
}

void match_multiset(std::vector<Complex> got, std::vector<Complex> want, double tol) {
    REQUIRE(got.size() == want.size());
    for (const auto& z : got) {
        double best = 1e300;
        std::size_t pick = want.size();
        for (std::size_t u = 0; u < want.size(); ++u) {
            const double d = std::abs(want[u] - z);
            if (d < best) { best = d; pick = u; }
        }
        REQUIRE(pick < want.size());
        CHECK(best <= tol);
        want.erase(want.begin() + static_cast<std::ptrdiff_t>(pick));
    }
}

// magnitude of the complex-sector component of a unit quaternion
double complex_part_norm(const Quaternion& q) {
    return std::sqrt(q.q0 * q.q0 + q.q1 * q.q1);
}
} // namespace

TEST_CASE("stationary operator assembly") {
    SECTION("free particle keeps only the right-i energy term") {
        const MatrixC a = build_a0({0.5, 1.0, 0.0, Complex{}, 1.0});
        CHECK(frobenius_norm(a.m0) == 0.0);
        CHECK(abs(a.m1(0, 0) - qi) == 0.0);
    }
    SECTION("zero energy leaves the real potential") {
        const MatrixC a = build_a0({0.5, 1.0, 3.0, Complex{}, 0.0});
        CHECK(abs(a.m0(0, 0) - Quaternion{3.0}) == 0.0);
        CHECK(frobenius_norm(a.m1) == 0.0);
    }
    SECTION("the j amplitude enters through left k") {
        const MatrixC a = build_a0({0.5, 1.0, 0.0, Complex{2.0, -1.0}, 0.0});
        // k (2 - i) = 2k - ki = -j + 2k
        CHECK(abs(a.m0(0, 0) - Quaternion{0, 0, -1, 2}) <= 1e-15);
    }
    SECTION("invalid parameters are rejected") {
        CHECK_THROWS_AS(build_a0({-1.0, 1.0, 0.0, Complex{}, 0.0}), ValidationError);
        CHECK_THROWS_AS(build_a0({0.5, 0.0, 0.0, Complex{}, 0.0}), ValidationError);
    }
}

TEST_CASE("free-particle basis doubles the standard solutions") {
    const PhysicalParams p{0.5, 1.0, 0.0, Complex{}, 1.0};
    const StationaryBasis b = stationary_basis(p);
    match_multiset(exps_of(b),
                   {Complex{0, 1}, Complex{0, -1}, Complex{1, 0}, Complex{-1, 0}},
                   1e-10);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(b.residuals[k] <= 1e-10);
        if (std::abs(b.exponents[k].imag()) > 0.5) {
            // oscillatory pair lives in the complex sector
            CHECK(complex_part_norm(b.directions[k]) >= 1.0 - 1e-10);
        } else {
            // the doubled pair is j-proportional
            CHECK(complex_part_norm(b.directions[k]) <= 1e-10);
        }
    }
}

TEST_CASE("evanescent region matches the complex limit, doubled") {
    const double m = 0.5, hbar = 1.0, V = 2.0, E = 1.0;
    const StationaryBasis b = stationary_basis({m, hbar, V, Complex{}, E});
    const double kappa = std::sqrt(2.0 * m * (V - E)) / hbar;
    const double kappa_j = std::sqrt(2.0 * m * (V + E)) / hbar;
    match_multiset(exps_of(b),
                   {Complex{kappa, 0}, Complex{-kappa, 0}, Complex{kappa_j, 0},
                    Complex{-kappa_j, 0}},
                   1e-10);
    for (std::size_t k = 0; k < 4; ++k) {
        if (std::abs(std::abs(b.exponents[k].real()) - kappa) < 1e-6)
            CHECK(complex_part_norm(b.directions[k]) >= 1.0 - 1e-9);
        else
            CHECK(complex_part_norm(b.directions[k]) <= 1e-9);
    }
}

TEST_CASE("degenerate energy is refused") {
    CHECK_THROWS_AS(stationary_basis({0.5, 1.0, 1.0, Complex{}, 1.0}),
                    DefectiveCompanion);
}

TEST_CASE("exponent multiset is closed under negation") {
    auto g = test::rng(801);
    for (int t = 0; t < 8; ++t) {
        PhysicalParams p;
        p.m = 0.25 + std::abs(test::rand_real(g));
        p.hbar = 0.5 + std::abs(test::rand_real(g));
        p.V = test::rand_real(g);
        p.W = Complex{test::rand_real(g), test::rand_real(g)};
        p.E = 2.0 + test::rand_real(g);
        StationaryBasis b;
        try {
            b = stationary_basis(p);
        } catch (const DefectiveCompanion&) {
            continue;
        }
        std::vector<Complex> neg;
        for (const Complex& z : exps_of(b)) neg.push_back(-z);
        match_multiset(exps_of(b), neg, 1e-7);
    }
}

TEST_CASE("time-dependent residuals on the grid") {
    const std::vector<double> ts{0.0, 0.4, 1.0};
    const std::vector<double> xs{-0.5, 0.1, 0.9};
    SECTION("complex limit") {
        const PhysicalParams p{0.5, 1.0, 0.25, Complex{}, 1.5};
        const StationaryBasis b = stationary_basis(p);
        const FullSolutionReport rep = verify_full_solution(p, b, ts, xs);
        CHECK(rep.right_form_residual <= 1e-6);
    }
    SECTION("quaternionic perturbation punishes the left placement") {
        const PhysicalParams p{0.5, 1.0, 0.25, Complex{0.4, 0.3}, 1.5};
        const StationaryBasis b = stationary_basis(p);
        const FullSolutionReport rep = verify_full_solution(p, b, ts, xs);
        CHECK(rep.right_form_residual <= 1e-6);
        CHECK(rep.left_form_residual > 10.0 * rep.right_form_residual);
        CHECK(rep.left_form_residual > 1e-2);
    }
    SECTION("trivial constants solve the free equation at machine level") {
        const PhysicalParams p{0.5, 1.0, 0.0, Complex{}, 0.0};
        StationaryBasis b;
        b.exponents = {Complex{}, Complex{}, Complex{}, Complex{}};
        b.directions = {Quaternion{1.0}, qi, qj, Quaternion::unit_k()};
        b.residuals = {0, 0, 0, 0};
        const FullSolutionReport rep = verify_full_solution(p, b, ts, xs);
        CHECK(rep.right_form_residual <= 1e-12);
        CHECK(rep.left_form_residual <= 1e-12);
    }
}

TEST_CASE("continuity as the j amplitude vanishes") {
    const PhysicalParams base{0.5, 1.0, 0.0, Complex{}, 1.0};
    const StationaryBasis b0 = stationary_basis(base);
    PhysicalParams p = base;
    p.W = Complex{1e-6, 0.0};
    const StationaryBasis bw = stationary_basis(p);
    // match each perturbed exponent to the unperturbed set
    for (const Complex& z : exps_of(bw)) {
        double best = 1e300;
        for (const Complex& z0 : exps_of(b0)) best = std::min(best, std::abs(z - z0));
        CHECK(best <= 1e-4);
    }
}
