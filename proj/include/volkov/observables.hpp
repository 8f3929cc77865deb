#pragma once

// Expectation values along free evolution: position, velocity <alpha>, and
// the dominant oscillation frequency of a series (zitterbewegung).

#include <iosfwd>
#include <vector>

#include "volkov/spectral_field.hpp"

namespace volkov {

/// <r> on a periodic box. Each active axis is located by its circular mean
/// (angle of sum |f|^2 e^{2 pi i x / L}) and then averaged linearly inside the
/// box-length window centred there; the result lies in [0, L). Throws
/// ValidationError for a zero-norm field or a packet wider than L/4.
/// Inactive (transverse) axes of a 1D grid report 0.
Vec3 position_expectation(const SpinorField& f);

/// <alpha> = sum f^dag alpha f * cell / ||f||^2, either representation.
Vec3 velocity_expectation(const SpinorField& f);

enum class Projection { none, positive, negative };

struct Trajectory {
    Projection provenance = Projection::none;
    bool position_tracked = true;  // grid-axis positions (z, or x,y,z in 3D)
    std::vector<double> times;
    std::vector<Vec3> position;
    std::vector<Vec3> velocity;
    std::vector<double> norm;
};

/// Free evolution of f0 (optionally reduced to one frequency sign and
/// renormalized) sampled at `samples` times over [t0, t0 + T]. Grid-axis
/// positions are unwrapped across the box seam. On a 1D grid <x>, <y> start
/// at 0 and follow from the exact time integral of <alpha_x>, <alpha_y>.
/// With track_position = false grid-axis positions are left as NaN.
Trajectory trajectory(const SpinorField& f0, double T, int samples, Projection projection,
                      bool track_position = true);

/// Angular frequency of the strongest spectral line of a uniformly sampled
/// series: linear trend removed, Hann window, zero padding, parabolic
/// interpolation of the peak bin.
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& series);

/// max - min of the series after removing its linear trend.
double oscillation_amplitude(const std::vector<double>& times, const std::vector<double>& series);

/// Columns: t,x,y,z,vx,vy,vz,norm
void write_csv(const Trajectory& traj, std::ostream& os);

}  // namespace volkov
