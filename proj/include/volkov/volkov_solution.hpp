#pragma once

// Closed-form Volkov solution of the Dirac equation in a linearly polarized
// plane wave, its charge-conjugate (positron) image, and a finite-difference
// check that both satisfy the Dirac equation.

#include <functional>

#include "volkov/field.hpp"
#include "volkov/spinor.hpp"

namespace volkov {

/// psi_W(x) for spin up along z:
///
///   exp(-i p.x) exp(-i A^2 (t-z) / (4(E-pz)))
///     * exp(i [8 A px sin(phi) - A^2 sin(2 phi)] / (8 omega (E-pz)))
///     * (u1 - A cos(phi) u2),      phi = omega (t - z).
///
/// Requires an on-shell p and a field without envelope.
Bispinor volkov_eval(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                     const SpacetimePoint& X, double m);

/// Charge-conjugate image C[psi_W]; solves the Dirac equation with the
/// potential sign reversed.
Bispinor positron_volkov_eval(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                              const SpacetimePoint& X, double m);

/// The phi-periodic factor F(phi) of psi_W, i.e. psi_W with the plane wave
/// exp(-i p.x) and the secular phase exp(-i A^2 (t-z)/(4(E-pz))) removed.
Bispinor volkov_periodic_factor(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                                double phi, double m);

/// Secular light-cone shift delta = A^2 / (4 (E - pz)). The field-dressed
/// (quasi) momentum is p + delta (1, 0, 0, 1).
double volkov_quasi_shift(const FourMomentum& p, const PlaneWaveFieldSpec& field);

using SpinorFunction = std::function<Bispinor(const SpacetimePoint&)>;

/// Norm of (i gamma^mu d_mu - m) psi - coupling * gamma^mu A_mu psi at X, with
/// second-order centered differences of step h. A_mu is the covariant
/// potential of `field` (A_1 = -A cos phi).
double dirac_residual(const SpinorFunction& psi, const PlaneWaveFieldSpec& field,
                      const SpacetimePoint& X, double m, double h, double coupling);

/// Residual of volkov_eval against the equation with coupling +1.
double dirac_residual(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                      const SpacetimePoint& X, double m, double h);

/// Residual of positron_volkov_eval against the sign-flipped equation
/// (coupling -1).
double positron_dirac_residual(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                               const SpacetimePoint& X, double m, double h);

}  // namespace volkov
