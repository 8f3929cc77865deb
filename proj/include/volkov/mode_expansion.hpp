#pragma once

// Plane-wave (photon-number) expansion of the Volkov solution:
//
//   psi_W(x) = exp(-i delta (t - z)) * sum_n w_n exp(-i q_n . x),
//   q_n = (E + n omega, px, py, pz + n omega),
//
// where delta is the secular light-cone shift (volkov_quasi_shift) and the
// w_n are the Fourier coefficients of the periodic factor F(phi):
//   w_n = (1/2pi) \oint dphi e^{i n phi} F(phi).

#include <iosfwd>
#include <vector>

#include "volkov/field.hpp"
#include "volkov/spinor.hpp"

namespace volkov {

struct ModeEntry {
    int n = 0;
    FourMomentum q;  // as in the ladder above; off shell for n != 0
    Bispinor w;
};

struct ModeTable {
    std::vector<ModeEntry> entries;  // n = -N .. N in order
    FourMomentum p;
    PlaneWaveFieldSpec field;
    double m = 1.0;
    int N = 0;
    double quasi_shift = 0.0;  // delta
    double tail_norm = 0.0;    // max ||w_(+/-(N+1))||, the first omitted orders

    const ModeEntry& at(int n) const { return entries.at(static_cast<std::size_t>(n + N)); }

    /// q_n + delta (1, 0, 0, 1): the four-momentum actually carried by mode n.
    FourMomentum quasi_momentum(int n) const;

    /// Resums the table at a spacetime point.
    Bispinor reconstruct(const SpacetimePoint& X) const;

    double total_norm2() const;
};

inline constexpr double default_tail_tolerance = 1e-13;
inline constexpr int max_truncation = 256;

/// Smallest N such that every coefficient with |n| > N is below `tail_tol`.
/// Throws NumericalError if N would exceed max_truncation.
int auto_truncation(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m,
                    double tail_tol = default_tail_tolerance);

/// Coefficients by the trapezoid rule on a uniform phi grid of `quad_points`
/// nodes (0 selects 16N, at least 64). Throws ValidationError if
/// quad_points < 8N, NumericalError if the first omitted order exceeds
/// `tail_tol`.
ModeTable mode_coefficients_quadrature(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                                       double m, int N, int quad_points = 0,
                                       double tail_tol = default_tail_tolerance);

/// Same table from generalized Bessel functions (Jacobi-Anger).
ModeTable mode_coefficients_bessel(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m,
                                   int N, double tail_tol = default_tail_tolerance);

/// J_n(x) for any integer order and real argument.
double bessel_j(int n, double x);

/// A_n(a, b) = sum_k J_(n-2k)(a) J_k(b), the Fourier coefficients of
/// exp(i [a sin(phi) + b sin(2 phi)]). Throws NumericalError if the k-sum
/// does not converge.
double generalized_bessel(int n, double a, double b);

/// Arguments (a, b) of the generalized Bessel functions for a given wave:
/// a = A px / (omega (E - pz)), b = -A^2 / (8 omega (E - pz)).
std::pair<double, double> volkov_bessel_arguments(const FourMomentum& p,
                                                  const PlaneWaveFieldSpec& field);

struct NegativeEnergyContent {
    /// Weight of modes whose printed energy E + n omega is negative.
    double fraction_sign = 0.0;
    /// Weight of Lambda_-(k_n) w_n with k_n the quasi-momentum of mode n.
    double fraction_projector = 0.0;
};

NegativeEnergyContent negative_energy_content(const ModeTable& table);

/// Columns: n,q0,q1,q2,q3,re0,im0,...,re3,im3,norm2
void write_csv(const ModeTable& table, std::ostream& os);

}  // namespace volkov
