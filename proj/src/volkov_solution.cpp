#include "volkov/volkov_solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

void require_plain_wave(const PlaneWaveFieldSpec& field) {
    validate(field);
    if (field.envelope) {
        throw ValidationError(
            "closed-form Volkov solution holds only for the infinite wave; field has an envelope");
    }
}

// Phases beyond 1e12 rad keep fewer than four significant digits after the
// stencil differences; such steps are rejected.
void require_stencil_range(const SpacetimePoint& X, double h, double rate) {
    const double reach = std::max({std::abs(X.t), std::abs(X.x), std::abs(X.y), std::abs(X.z)}) + h;
    if (!std::isfinite(reach) || reach * rate > 1e12) {
        std::ostringstream os;
        os << "finite-difference step h=" << h << " takes the stencil phase beyond 1e12 rad";
        throw ValidationError(os.str());
    }
}

}  // namespace

void validate(const PlaneWaveFieldSpec& field) {
    if (!(field.omega > 0.0) || !std::isfinite(field.omega)) {
        throw ValidationError("wave frequency omega must be positive and finite");
    }
    if (!(field.A >= 0.0) || !std::isfinite(field.A)) {
        throw ValidationError("wave amplitude A must be non-negative and finite");
    }
    if (field.envelope && !(field.envelope->ramp > 0.0 && field.envelope->plateau >= 0.0)) {
        throw ValidationError("envelope needs ramp > 0 and plateau >= 0");
    }
}

double volkov_quasi_shift(const FourMomentum& p, const PlaneWaveFieldSpec& field) {
    return field.A * field.A / (4.0 * (p.E - p.pz));
}

Bispinor volkov_periodic_factor(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                                double phi, double m) {
    const auto [u1, u2] = volkov_spinors(p, m);
    const double A = field.A;
    const double lightcone = p.E - p.pz;
    const double oscillating =
        (8.0 * A * p.px * std::sin(phi) - A * A * std::sin(2.0 * phi)) / (8.0 * field.omega * lightcone);
    return std::exp(I * oscillating) * (u1 - A * std::cos(phi) * u2);
}

Bispinor volkov_eval(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                     const SpacetimePoint& X, double m) {
    require_plain_wave(field);
    require_on_shell(p, m);
    if (!std::isfinite(X.t) || !std::isfinite(X.x) || !std::isfinite(X.y) || !std::isfinite(X.z)) {
        throw ValidationError("spacetime point has non-finite coordinates");
    }
    const double p_dot_x = p.E * X.t - p.px * X.x - p.py * X.y - p.pz * X.z;
    const double retarded = X.t - X.z;
    const double phi = field.omega * retarded;
    const double secular = volkov_quasi_shift(p, field) * retarded;
    return std::exp(-I * (p_dot_x + secular)) * volkov_periodic_factor(p, field, phi, m);
}

Bispinor positron_volkov_eval(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                              const SpacetimePoint& X, double m) {
    return charge_conjugate(volkov_eval(p, field, X, m));
}

double dirac_residual(const SpinorFunction& psi, const PlaneWaveFieldSpec& field,
                      const SpacetimePoint& X, double m, double h, double coupling) {
    const double scale = std::max({1.0, std::abs(X.t), std::abs(X.x), std::abs(X.y), std::abs(X.z)});
    if (!(h > 0.0) || !std::isfinite(h) || h < 1e3 * std::numeric_limits<double>::epsilon() * scale ||
        !std::isfinite(scale + h)) {
        std::ostringstream os;
        os << "finite-difference step h=" << h << " is outside the usable range at this point";
        throw ValidationError(os.str());
    }
    require_stencil_range(X, h, std::max(m, field.omega));

    const auto& g = gammas();
    Bispinor lhs = -m * psi(X);
    for (int mu = 0; mu < 4; ++mu) {
        SpacetimePoint fwd = X, bwd = X;
        double* f = (mu == 0) ? &fwd.t : (mu == 1) ? &fwd.x : (mu == 2) ? &fwd.y : &fwd.z;
        double* b = (mu == 0) ? &bwd.t : (mu == 1) ? &bwd.x : (mu == 2) ? &bwd.y : &bwd.z;
        *f += h;
        *b -= h;
        const Bispinor derivative = (psi(fwd) - psi(bwd)) / (2.0 * h);
        lhs += I * (g.gamma[mu] * derivative);
    }
    // gamma^mu A_mu with A^1 = A cos(phi) and lowered A_1 = -A^1.
    const double phi = field.omega * (X.t - X.z);
    const Matrix4 a_slash = -field.A * std::cos(phi) * g.gamma[1];
    const Bispinor residual = lhs - coupling * (a_slash * psi(X));
    return residual.norm();
}

double dirac_residual(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                      const SpacetimePoint& X, double m, double h) {
    require_plain_wave(field);
    require_on_shell(p, m);
    require_stencil_range(X, h, p.E + std::abs(p.px) + std::abs(p.py) + std::abs(p.pz) + field.omega);
    return dirac_residual([&](const SpacetimePoint& Y) { return volkov_eval(p, field, Y, m); },
                          field, X, m, h, +1.0);
}

double positron_dirac_residual(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                               const SpacetimePoint& X, double m, double h) {
    require_plain_wave(field);
    require_on_shell(p, m);
    require_stencil_range(X, h, p.E + std::abs(p.px) + std::abs(p.py) + std::abs(p.pz) + field.omega);
    return dirac_residual([&](const SpacetimePoint& Y) { return positron_volkov_eval(p, field, Y, m); },
                          field, X, m, h, -1.0);
}

}  // namespace volkov
