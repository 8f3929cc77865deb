#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace volkov {

/// C^1 window: raised-cosine ramps of length `ramp` around a flat plateau.
/// g = 0 for t <= t_on and t >= t_off(), g = 1 on the plateau.
struct RaisedCosineEnvelope {
    double t_on = 0.0;
    double ramp = 1.0;
    double plateau = 0.0;

    double t_off() const { return t_on + 2.0 * ramp + plateau; }

    double operator()(double t) const {
        const double tau = t - t_on;
        if (tau <= 0.0 || t >= t_off()) return 0.0;
        if (tau < ramp) return 0.5 * (1.0 - std::cos(std::numbers::pi * tau / ramp));
        if (tau <= ramp + plateau) return 1.0;
        const double down = t_off() - t;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * down / ramp));
    }
};

/// Linearly polarized plane wave A_x = A cos[omega (t - z)].
///
/// The amplitude already contains the charge (A == e A_physical), which is
/// how it enters the closed-form Volkov solution.
struct PlaneWaveFieldSpec {
    double A = 0.0;
    double omega = 1.0;
    std::optional<RaisedCosineEnvelope> envelope;

    double period() const { return 2.0 * std::numbers::pi / omega; }
};

/// Throws ValidationError on omega <= 0, A < 0 or non-finite values.
void validate(const PlaneWaveFieldSpec& field);

struct SpacetimePoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

}  // namespace volkov
