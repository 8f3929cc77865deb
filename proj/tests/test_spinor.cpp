#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "volkov/spinor.hpp"

using namespace volkov;
using testing::random_momentum;

namespace {

double metric(int mu, int nu) {
    if (mu != nu) return 0.0;
    return mu == 0 ? 1.0 : -1.0;
}

Matrix4 to_matrix(const oracle::Mat4& m) { return m; }

}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford algebra") {
    const auto& g = gammas();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const Matrix4 anti = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
            const Matrix4 expected = 2.0 * metric(mu, nu) * Matrix4::Identity();
            CHECK((anti - expected).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
    CHECK((g.gamma[0].adjoint() - g.gamma[0]).norm() == 0.0);
    for (int i = 1; i < 4; ++i) CHECK((g.gamma[i].adjoint() + g.gamma[i]).norm() == 0.0);
}

TEST_CASE("Dirac representation entries") {
    const auto& g = gammas();
    Matrix4 diag = Matrix4::Zero();
    diag.diagonal() << 1, 1, -1, -1;
    CHECK(g.gamma[0] == diag);
    CHECK((g.gamma[1] * g.gamma[2] + g.gamma[2] * g.gamma[1]).norm() <= 1e-14);
    CHECK((g.gamma[2] * g.gamma[2] + Matrix4::Identity()).norm() == 0.0);
    const auto ref = oracle::dirac_gammas();
    for (int mu = 0; mu < 4; ++mu) CHECK((g.gamma[mu] - to_matrix(ref[mu])).norm() == 0.0);
    for (int i = 0; i < 3; ++i) CHECK((g.alpha[i] - g.gamma[0] * g.gamma[i + 1]).norm() == 0.0);
    CHECK(g.beta == g.gamma[0]);
}

TEST_CASE("free spinors solve their equations and are orthogonal") {
    const double m = 1.0;
    const auto& g = gammas();
    for (int trial = 0; trial < 200; ++trial) {
        const FourMomentum p = random_momentum(2.0);
        const FourMomentum minus_p = FourMomentum::make_on_shell(-p.px, -p.py, -p.pz, m);
        const Matrix4 ps = g.slash(p);
        std::array<Bispinor, 4> basis;
        for (int s = 0; s < 2; ++s) {
            const auto spin = s == 0 ? Spin::up : Spin::down;
            const auto [u, v] = free_spinors(p, spin, m);
            CHECK((ps * u - m * u).norm() <= 1e-12 * u.norm() * p.E);
            CHECK((ps * v + m * v).norm() <= 1e-12 * v.norm() * p.E);
            CHECK(u.squaredNorm() == doctest::Approx(2.0 * p.E / m).epsilon(1e-13));
            CHECK(v.squaredNorm() == doctest::Approx(2.0 * p.E / m).epsilon(1e-13));
            basis[s] = u;
            basis[2 + s] = free_spinors(minus_p, spin, m).v;
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) CHECK(std::abs(basis[a].dot(basis[b])) <= 1e-12 * p.E);
        }
        Matrix4 completeness = Matrix4::Zero();
        for (const auto& s : basis) completeness += s * s.adjoint();
        CHECK((completeness - (2.0 * p.E / m) * Matrix4::Identity()).norm() <= 1e-12 * p.E);
    }
}

TEST_CASE("free spinors at rest and preconditions") {
    const auto rest = FourMomentum::make_on_shell(0, 0, 0, 1.0);
    const auto [u, v] = free_spinors(rest, Spin::up, 1.0);
    CHECK(u[0] != Complex{0.0});
    CHECK(u.tail<3>().norm() == 0.0);
    const auto down = free_spinors(rest, Spin::down, 1.0).u;
    CHECK(std::abs(down[1]) > 0.0);
    CHECK(v.head<2>().norm() == 0.0);
    CHECK_THROWS_AS(free_spinors(FourMomentum::make_off_shell(2.0, 0, 0, 0), Spin::up, 1.0), ValidationError);
    CHECK_THROWS_AS(FourMomentum::make_on_shell(0, 0, 0, 0.0), ValidationError);
    CHECK_THROWS_AS(FourMomentum::make_on_shell(NAN, 0, 0, 1.0), ValidationError);
}

TEST_CASE("on-shell check uses a 1e-12 relative window") {
    const auto p = FourMomentum::make_on_shell(0.3, 0.1, -0.2, 1.0);
    CHECK(p.on_shell);
    CHECK(p.square() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_NOTHROW(require_on_shell(FourMomentum::make_off_shell(p.E * (1 + 5e-13), p.px, p.py, p.pz), 1.0));
    CHECK_THROWS_WITH_AS(require_on_shell(FourMomentum::make_off_shell(p.E * (1 + 1e-9), p.px, p.py, p.pz), 1.0),
                         doctest::Contains("off shell"), ValidationError);
}

TEST_CASE("Volkov bispinors as printed") {
    const auto rest = FourMomentum::make_on_shell(0, 0, 0, 1.0);
    const auto [u1, u2] = volkov_spinors(rest, 1.0);
    Bispinor e1, e2;
    e1 << 1, 0, 0, 0;
    e2 << 0, -0.5, 0, 0.5;
    CHECK((u1 - e1).norm() == 0.0);
    CHECK((u2 - e2).norm() == 0.0);
    CHECK_THROWS_AS(volkov_spinors(rest, 0.0), ValidationError);
    CHECK_THROWS_AS(volkov_spinors(rest, -1.0), ValidationError);
}

TEST_CASE("u2 has a non-vanishing negative-energy projection") {
    const double m = 1.0;
    for (int trial = 0; trial < 100; ++trial) {
        const FourMomentum p = random_momentum(1.5);
        const auto u2 = volkov_spinors(p, m).u2;
        // Oracle: orthogonal projection onto span{v(-p, up), v(-p, down)}.
        const auto minus_p = FourMomentum::make_on_shell(-p.px, -p.py, -p.pz, m);
        const Bispinor a = free_spinors(minus_p, Spin::up, m).v;
        const Bispinor b = free_spinors(minus_p, Spin::down, m).v;
        const Bispinor proj = a * a.dot(u2) / a.squaredNorm() + b * b.dot(u2) / b.squaredNorm();
        const auto pr = energy_projectors(p.spatial(), m);
        CHECK(proj.norm() > 1e-3);
        CHECK((pr.minus * u2 - proj).norm() <= 1e-13);
    }
}

TEST_CASE("charge conjugation is an antiunitary involution") {
    for (int trial = 0; trial < 100; ++trial) {
        const Bispinor psi = testing::random_spinor();
        const Bispinor c = charge_conjugate(psi);
        CHECK((charge_conjugate(c) - psi).norm() <= 1e-15);
        CHECK(c.norm() == doctest::Approx(psi.norm()).epsilon(1e-15));
        const Bispinor phi = testing::random_spinor();
        CHECK(std::abs(charge_conjugate(phi).dot(c) - std::conj(phi.dot(psi))) <= 1e-14);
    }
    CHECK(charge_conjugate(Bispinor::Zero()).norm() == 0.0);
}

TEST_CASE("charge conjugate of u is a v-type spinor") {
    const double m = 1.0;
    const auto& g = gammas();
    for (int trial = 0; trial < 50; ++trial) {
        const FourMomentum p = random_momentum(1.0);
        const Bispinor u = free_spinors(p, Spin::up, m).u;
        const Bispinor c = charge_conjugate(u);
        CHECK((g.slash(p) * c + m * c).norm() <= 1e-12 * c.norm() * p.E);
        // The plane-wave factor e^{-ip.x} becomes e^{+ip.x}.
        const double phase = 0.37;
        const Bispinor wave = charge_conjugate(std::exp(Complex{0, -phase}) * u);
        CHECK((wave - std::exp(Complex{0, phase}) * c).norm() <= 1e-14);
    }
}

TEST_CASE("energy projectors at rest") {
    const auto pr = energy_projectors({0, 0, 0}, 1.0);
    Matrix4 d = Matrix4::Zero();
    d.diagonal() << 1, 1, 0, 0;
    CHECK((pr.plus - d).norm() == 0.0);
    CHECK(pr.energy == 1.0);
}

TEST_CASE("energy projector identities at 1000 random momenta") {
    const double m = 1.0;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec3 k = testing::random_vec(3.0);
        const auto pr = energy_projectors(k, m);
        const Matrix4 H = dirac_hamiltonian(k, m);
        worst = std::max({worst, (pr.plus + pr.minus - Matrix4::Identity()).cwiseAbs().maxCoeff(),
                          (pr.plus * pr.plus - pr.plus).cwiseAbs().maxCoeff(),
                          (pr.minus * pr.minus - pr.minus).cwiseAbs().maxCoeff(),
                          (pr.plus * pr.minus).cwiseAbs().maxCoeff(),
                          std::abs(pr.plus.trace() - 2.0), std::abs(pr.minus.trace() - 2.0),
                          (H * pr.plus - pr.energy * pr.plus).cwiseAbs().maxCoeff() / pr.energy,
                          (H * pr.minus + pr.energy * pr.minus).cwiseAbs().maxCoeff() / pr.energy});
        const auto p = FourMomentum::make_on_shell(k[0], k[1], k[2], m);
        const auto mp = FourMomentum::make_on_shell(-k[0], -k[1], -k[2], m);
        for (Spin s : {Spin::up, Spin::down}) {
            const Bispinor u = free_spinors(p, s, m).u;
            const Bispinor v = free_spinors(mp, s, m).v;
            worst = std::max({worst, (pr.plus * u - u).norm() / u.norm(), (pr.plus * v).norm() / v.norm()});
        }
    }
    CHECK(worst <= 1e-12);
    CHECK_THROWS_AS(energy_projectors({0, 0, 0}, 0.0), ValidationError);
}
