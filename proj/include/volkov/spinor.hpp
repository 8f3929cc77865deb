#pragma once

// Dirac-representation gamma matrices, free and Volkov bispinors, energy
// projectors and charge conjugation. Natural units (hbar = c = 1), metric
// signature (+,-,-,-).

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace volkov {

using Complex = std::complex<double>;
using Bispinor = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4cd;
using Vec3 = std::array<double, 3>;

/// Raised for parameter and precondition violations (CLI exit code 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot meet its tolerance (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Energy-momentum four-vector (E, px, py, pz).
///
/// Electron momenta are constructed on shell through `on_shell`; the mode
/// ladder of the Volkov expansion produces off-shell vectors, which carry
/// `on_shell == false`.
struct FourMomentum {
    double E = 0.0;
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
    bool on_shell = false;

    static FourMomentum make_on_shell(double px, double py, double pz, double m);
    static FourMomentum make_off_shell(double E, double px, double py, double pz);

    Vec3 spatial() const { return {px, py, pz}; }
    double spatial_norm2() const { return px * px + py * py + pz * pz; }
    /// Minkowski square E^2 - p^2.
    double square() const { return E * E - spatial_norm2(); }
};

/// Throws ValidationError unless E = +sqrt(m^2 + p^2) to 1e-12 relative.
void require_on_shell(const FourMomentum& p, double m);

struct GammaSet {
    std::array<Matrix4, 4> gamma;  // upper index gamma^mu
    std::array<Matrix4, 3> alpha;  // gamma^0 gamma^i
    Matrix4 beta;                  // gamma^0

    /// gamma^mu p_mu = E gamma^0 - p . gamma
    Matrix4 slash(const FourMomentum& p) const;
};

GammaSet make_gamma_set();

/// Shared immutable instance; construction happens once.
const GammaSet& gammas();

/// Free Dirac Hamiltonian H(k) = alpha . k + beta m.
Matrix4 dirac_hamiltonian(const Vec3& k, double m);

enum class Spin { up, down };

struct FreeSpinors {
    Bispinor u;  // positive energy, (pslash - m) u = 0
    Bispinor v;  // negative energy partner, (pslash + m) v = 0
};

/// u(p,s) and v(p,s) normalized to u^dag u = v^dag v = 2E/m.
///
/// u = sqrt((E+m)/m) (chi_s, sigma.p chi_s / (E+m)), and v uses the same
/// two-spinor in its lower block. At spatial momentum k the negative-energy
/// eigenvector of H(k) is v(-k, s).
FreeSpinors free_spinors(const FourMomentum& p, Spin s, double m);

struct VolkovSpinors {
    Bispinor u1;
    Bispinor u2;
};

/// The spin-up-along-z bispinors of the plane-wave Volkov solution, with
/// their prefactors 1/(E+m) and 1/[2(E+m)(E-pz)] kept as written. Not unit
/// normalized.
VolkovSpinors volkov_spinors(const FourMomentum& p, double m);

/// psi_C = i gamma^2 psi^*
Bispinor charge_conjugate(const Bispinor& psi);

struct EnergyProjectors {
    Matrix4 plus;
    Matrix4 minus;
    double energy = 0.0;  // E_k
};

/// Lambda_(+/-)(k) = (E_k +/- H(k)) / (2 E_k).
EnergyProjectors energy_projectors(const Vec3& k, double m);

inline double on_shell_energy(const Vec3& k, double m) {
    return std::sqrt(m * m + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

}  // namespace volkov
