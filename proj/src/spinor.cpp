#include "volkov/spinor.hpp"

#include <cmath>
#include <sstream>

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

void require_positive_mass(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        std::ostringstream os;
        os << "mass must be positive and finite, got m=" << m;
        throw ValidationError(os.str());
    }
}

}  // namespace

FourMomentum FourMomentum::make_on_shell(double px, double py, double pz, double m) {
    require_positive_mass(m);
    if (!std::isfinite(px) || !std::isfinite(py) || !std::isfinite(pz)) {
        throw ValidationError("momentum components must be finite");
    }
    return {std::sqrt(m * m + px * px + py * py + pz * pz), px, py, pz, true};
}

FourMomentum FourMomentum::make_off_shell(double E, double px, double py, double pz) {
    return {E, px, py, pz, false};
}

void require_on_shell(const FourMomentum& p, double m) {
    require_positive_mass(m);
    const double expected = std::sqrt(m * m + p.spatial_norm2());
    if (!std::isfinite(p.E) || std::abs(p.E - expected) > 1e-12 * expected) {
        std::ostringstream os;
        os.precision(17);
        os << "four-momentum is off shell: E=" << p.E << " but sqrt(m^2+p^2)=" << expected;
        throw ValidationError(os.str());
    }
}

Matrix4 GammaSet::slash(const FourMomentum& p) const {
    return p.E * gamma[0] - p.px * gamma[1] - p.py * gamma[2] - p.pz * gamma[3];
}

GammaSet make_gamma_set() {
    using Matrix2 = Eigen::Matrix2cd;
    Matrix2 sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -I, I, 0;
    sz << 1, 0, 0, -1;
    const std::array<Matrix2, 3> sigma{sx, sy, sz};

    GammaSet g;
    g.gamma[0] = Matrix4::Zero();
    g.gamma[0].topLeftCorner<2, 2>() = Matrix2::Identity();
    g.gamma[0].bottomRightCorner<2, 2>() = -Matrix2::Identity();
    for (int i = 0; i < 3; ++i) {
        Matrix4 gi = Matrix4::Zero();
        gi.topRightCorner<2, 2>() = sigma[i];
        gi.bottomLeftCorner<2, 2>() = -sigma[i];
        g.gamma[i + 1] = gi;
        g.alpha[i] = g.gamma[0] * gi;
    }
    g.beta = g.gamma[0];
    return g;
}

const GammaSet& gammas() {
    static const GammaSet set = make_gamma_set();
    return set;
}

Matrix4 dirac_hamiltonian(const Vec3& k, double m) {
    const auto& g = gammas();
    return k[0] * g.alpha[0] + k[1] * g.alpha[1] + k[2] * g.alpha[2] + m * g.beta;
}

FreeSpinors free_spinors(const FourMomentum& p, Spin s, double m) {
    require_on_shell(p, m);
    const double E = p.E;
    const double norm = std::sqrt((E + m) / m);
    const Eigen::Vector2cd chi = (s == Spin::up) ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);

    Eigen::Matrix2cd sigma_p;
    sigma_p << p.pz, Complex(p.px, -p.py), Complex(p.px, p.py), -p.pz;
    const Eigen::Vector2cd small = sigma_p * chi / (E + m);

    FreeSpinors out;
    out.u << chi, small;
    out.v << small, chi;
    out.u *= norm;
    out.v *= norm;
    return out;
}

VolkovSpinors volkov_spinors(const FourMomentum& p, double m) {
    require_on_shell(p, m);
    const double E = p.E;
    const Complex pt(p.px, p.py);
    const double lightcone = E - p.pz;

    VolkovSpinors out;
    out.u1 << E + m, 0.0, p.pz, pt;
    out.u1 /= (E + m);
    out.u2 << pt, -(E + m - p.pz), pt, E + m - p.pz;
    out.u2 /= 2.0 * (E + m) * lightcone;
    return out;
}

Bispinor charge_conjugate(const Bispinor& psi) {
    return I * (gammas().gamma[2] * psi.conjugate());
}

EnergyProjectors energy_projectors(const Vec3& k, double m) {
    require_positive_mass(m);
    const double E = on_shell_energy(k, m);
    const Matrix4 H = dirac_hamiltonian(k, m);
    const Matrix4 id = Matrix4::Identity();
    return {(E * id + H) / (2.0 * E), (E * id - H) / (2.0 * E), E};
}

}  // namespace volkov
