#include <catch2/catch_amalgamated.hpp>

#include "quatlin/quaternion.hpp"
#include "test_helpers.hpp"

using namespace quatlin;
using test::oracle_mul;

TEST_CASE("defining relations of the units") {
    const Quaternion i = Quaternion::unit_i();
    const Quaternion j = Quaternion::unit_j();
    const Quaternion k = Quaternion::unit_k();
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(j * k == i);
    CHECK(k * i == j);
    CHECK(i * i == Quaternion{-1.0});
    CHECK(i * j * k == Quaternion{-1.0});
}

TEST_CASE("product expansion (1+i)(1+j)") {
    const Quaternion a{1, 1, 0, 0};
    const Quaternion b{1, 0, 1, 0};
    const Quaternion want = oracle_mul(a, b);
    CHECK(a * b == want);
    CHECK(a * b == Quaternion{1, 1, 1, 1});
}

TEST_CASE("product agrees with the basis-table oracle on random inputs") {
    auto g = test::rng(101);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = test::rand_quaternion(g);
        const Quaternion b = test::rand_quaternion(g);
        const Quaternion got = a * b;
        const Quaternion want = oracle_mul(a, b);
        CHECK(abs(got - want) <= 1e-14 * (1.0 + abs(want)));
    }
}

TEST_CASE("norm is multiplicative") {
    auto g = test::rng(102);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = test::rand_quaternion(g);
        const Quaternion b = test::rand_quaternion(g);
        const double lhs = abs(a * b);
        const double rhs = abs(a) * abs(b);
        CHECK(std::abs(lhs - rhs) <= 4e-15 * (1.0 + rhs));
    }
}

TEST_CASE("conjugation involutes and detects reals") {
    auto g = test::rng(103);
    for (int t = 0; t < 50; ++t) {
        const Quaternion q = test::rand_quaternion(g);
        CHECK(conj(conj(q)) == q);
        const Quaternion qc = q * conj(q);
        CHECK(std::abs(qc.q0 - norm_sq(q)) <= 1e-14 * (1.0 + norm_sq(q)));
        CHECK(std::abs(qc.q1) + std::abs(qc.q2) + std::abs(qc.q3) <= 1e-14 * (1.0 + norm_sq(q)));
    }
}

TEST_CASE("associativity on random triples") {
    auto g = test::rng(104);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = test::rand_quaternion(g);
        const Quaternion b = test::rand_quaternion(g);
        const Quaternion c = test::rand_quaternion(g);
        const Quaternion lhs = (a * b) * c;
        const Quaternion rhs = a * (b * c);
        CHECK(abs(lhs - rhs) <= 1e-13 * (1.0 + abs(rhs)));
    }
}

TEST_CASE("symplectic decomposition fixed points") {
    SECTION("1+2i+3j+4k") {
        const SymplecticPair p = symplectic_decompose({1, 2, 3, 4});
        CHECK(p.z1 == Complex{1, 2});
        CHECK(p.z2 == Complex{3, -4});
    }
    SECTION("zero") {
        const SymplecticPair p = symplectic_decompose({});
        CHECK(p.z1 == Complex{});
        CHECK(p.z2 == Complex{});
    }
    SECTION("j alone") {
        const SymplecticPair p = symplectic_decompose(Quaternion::unit_j());
        CHECK(p.z1 == Complex{});
        CHECK(p.z2 == Complex{1, 0});
    }
}

TEST_CASE("symplectic reconstruction is bitwise exact") {
    auto g = test::rng(105);
    for (int t = 0; t < 500; ++t) {
        const Quaternion q = test::rand_quaternion(g);
        CHECK(symplectic_reconstruct(symplectic_decompose(q)) == q);
    }
    // the split really is z1 + j z2
    const Quaternion q{0.3, -0.7, 1.1, 2.5};
    const SymplecticPair p = symplectic_decompose(q);
    const Quaternion rebuilt =
        from_complex(p.z1) + Quaternion::unit_j() * from_complex(p.z2);
    CHECK(abs(rebuilt - q) <= 1e-15);
}

TEST_CASE("rephasing fixed cases") {
    SECTION("j goes to i") {
        const Rephasing r = rephase_to_complex(Quaternion::unit_j());
        CHECK(r.z == Complex{0, 1});
        CHECK(std::abs(abs(r.u) - 1.0) <= 1e-15);
        const Quaternion back = conj(r.u) * Quaternion::unit_j() * r.u;
        CHECK(abs(back - from_complex(r.z)) <= 1e-15);
    }
    SECTION("reals are fixed with u = 1") {
        const Rephasing r = rephase_to_complex(Quaternion{3.0});
        CHECK(r.z == Complex{3, 0});
        CHECK(r.u == Quaternion{1.0});
    }
    SECTION("already-complex input with positive imaginary part") {
        const Rephasing r = rephase_to_complex({1, 1, 0, 0});
        CHECK(std::abs(r.z.real() - 1.0) <= 1e-15);
        CHECK(std::abs(r.z.imag() - 1.0) <= 1e-15);
        const Quaternion back = conj(r.u) * Quaternion{1, 1, 0, 0} * r.u;
        CHECK(abs(back - from_complex(r.z)) <= 1e-14);
    }
    SECTION("antipodal direction -i") {
        const Quaternion q{0, -2, 0, 0};
        const Rephasing r = rephase_to_complex(q);
        CHECK(r.z == Complex{0, 2});
        const Quaternion back = conj(r.u) * q * r.u;
        CHECK(abs(back - from_complex(r.z)) <= 1e-14);
    }
}

TEST_CASE("rephasing properties on random inputs") {
    auto g = test::rng(106);
    for (int t = 0; t < 300; ++t) {
        const Quaternion q = test::rand_quaternion(g);
        const Rephasing r = rephase_to_complex(q);
        CHECK(r.z.imag() >= 0.0);
        CHECK(std::abs(r.z.imag() - imag_norm(q)) <= 1e-14 * (1.0 + imag_norm(q)));
        CHECK(std::abs(r.z.real() - q.q0) <= 1e-14 * (1.0 + std::abs(q.q0)));
        CHECK(std::abs(abs(r.u) - 1.0) <= 1e-14);
        const Quaternion back = conj(r.u) * q * r.u;
        CHECK(abs(back - from_complex(r.z)) <= 1e-13 * (1.0 + abs(q)));
    }
}

TEST_CASE("unitary conjugation preserves norm and real part") {
    auto g = test::rng(107);
    for (int t = 0; t < 300; ++t) {
        const Quaternion q = test::rand_quaternion(g);
        const Quaternion u = test::rand_unit_quaternion(g);
        const Quaternion c = conj(u) * q * u;
        CHECK(std::abs(abs(c) - abs(q)) <= 1e-14 * (1.0 + abs(q)));
        CHECK(std::abs(c.q0 - q.q0) <= 1e-14 * (1.0 + abs(q)));
    }
}

TEST_CASE("quaternion exponential matches the complex case") {
    const Quaternion e = exp(Quaternion{0, 2, 0, 0});
    CHECK(std::abs(e.q0 - std::cos(2.0)) <= 1e-15);
    CHECK(std::abs(e.q1 - std::sin(2.0)) <= 1e-15);
    const Quaternion r = exp(Quaternion{1.5});
    CHECK(std::abs(r.q0 - std::exp(1.5)) <= 1e-14 * std::exp(1.5));
}
