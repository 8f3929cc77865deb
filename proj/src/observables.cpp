#include "volkov/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "volkov/fft.hpp"
#include "volkov/frequency_separation.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return {(sy - slope * sx) / n, slope};
}

std::vector<double> detrended(const std::vector<double>& t, const std::vector<double>& y) {
    const auto [c0, c1] = linear_fit(t, y);
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - (c0 + c1 * t[i]);
    return out;
}

/// Exact integral over [0, tau] of <alpha_axis> for free evolution of the
/// momentum field (positive part fp, negative part fm).
double transverse_displacement(const SpinorField& fp, const SpinorField& fm, int axis, double tau) {
    const Matrix4& alpha = gammas().alpha[axis];
    double sum = 0.0;
    for (std::size_t i = 0; i < fp.values.size(); ++i) {
        const double E = on_shell_energy(fp.momentum(i), fp.m);
        const Bispinor& a = fp.values[i];
        const Bispinor& b = fm.values[i];
        const double diag = (a.dot(alpha * a) + b.dot(alpha * b)).real();
        const Complex cross = a.dot(alpha * b);
        sum += diag * tau + 2.0 * (cross * (std::exp(2.0 * I * E * tau) - 1.0) / (2.0 * I * E)).real();
    }
    return sum * fp.cell();
}

}  // namespace

Vec3 position_expectation(const SpinorField& f) {
    if (f.rep != Representation::position) throw ValidationError("position_expectation expects a position field");
    const double total = f.norm2() / f.cell();
    if (!(total > 0.0)) throw ValidationError("cannot take expectation values of a zero-norm field");
    Vec3 r{0.0, 0.0, 0.0};
    for (int axis = 0; axis < 3; ++axis) {
        if (!f.grid.active(axis)) continue;
        const double L = f.grid.lengths[axis];
        Complex phasor{0.0, 0.0};
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            phasor += f.values[i].squaredNorm() * std::exp(I * (two_pi * f.position(i)[axis] / L));
        }
        double center = std::arg(phasor) * L / two_pi;
        if (center < 0.0) center += L;
        double mean = 0.0, spread = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            double d = f.position(i)[axis] - center;
            d -= L * std::round(d / L);
            const double w = f.values[i].squaredNorm();
            mean += w * d;
            spread += w * d * d;
        }
        mean /= total;
        const double width = std::sqrt(std::max(0.0, spread / total - mean * mean));
        if (width >= 0.25 * L) {
            throw ValidationError("packet is not localized (width " + std::to_string(width) +
                                  " >= L/4); position expectation is undefined on the periodic box");
        }
        double value = center + mean;
        value -= L * std::floor(value / L);
        r[axis] = value;
    }
    return r;
}

Vec3 velocity_expectation(const SpinorField& f) {
    const auto& g = gammas();
    Vec3 v{0.0, 0.0, 0.0};
    double total = 0.0;
    for (const auto& psi : f.values) {
        total += psi.squaredNorm();
        for (int a = 0; a < 3; ++a) v[a] += psi.dot(g.alpha[a] * psi).real();
    }
    if (!(total > 0.0)) throw ValidationError("cannot take expectation values of a zero-norm field");
    for (auto& c : v) c /= total;
    return v;
}

Trajectory trajectory(const SpinorField& f0, double T, int samples, Projection projection, bool track_position) {
    if (!(T > 0.0)) throw ValidationError("trajectory duration must be positive");
    if (samples < 2) throw ValidationError("trajectory needs at least two samples");

    SpinorField start = as_momentum(f0);
    const SplitResult parts = split(start);
    SpinorField plus = parts.positive, minus = parts.negative;
    if (projection != Projection::none) {
        SpinorField kept = projection == Projection::positive ? parts.positive : parts.negative;
        const double n = kept.norm();
        if (n < 1e-10) throw ValidationError("projected part has norm below 1e-10; nothing to track");
        kept *= 1.0 / n;
        start = kept;
        plus = projection == Projection::positive ? kept : SpinorField::zeros(kept.grid, kept.rep, kept.t, kept.m, kept.transverse);
        minus = projection == Projection::negative ? kept : SpinorField::zeros(kept.grid, kept.rep, kept.t, kept.m, kept.transverse);
    }
    const double norm2 = start.norm2();

    Trajectory traj;
    traj.provenance = projection;
    traj.position_tracked = track_position;
    const std::size_t count = static_cast<std::size_t>(samples);
    traj.times.resize(count);
    traj.position.resize(count);
    traj.velocity.resize(count);
    traj.norm.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double tau = T * static_cast<double>(j) / (samples - 1);
        const SpinorField ft = free_evolve(start, tau);
        traj.times[j] = ft.t;
        traj.norm[j] = ft.norm();
        traj.velocity[j] = velocity_expectation(ft);
        Vec3 r{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN()};
        if (track_position) r = position_expectation(to_position(ft));
        if (ft.grid.dims == 1) {
            r[0] = transverse_displacement(plus, minus, 0, tau) / norm2;
            r[1] = transverse_displacement(plus, minus, 1, tau) / norm2;
        }
        if (track_position && j > 0) {
            for (int a = 0; a < 3; ++a) {
                if (!ft.grid.active(a)) continue;
                const double L = ft.grid.lengths[a];
                r[a] -= L * std::round((r[a] - traj.position[j - 1][a]) / L);
            }
        }
        traj.position[j] = r;
    }
    return traj;
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 8 || times.size() != n) throw ValidationError("frequency extraction needs >= 8 matching samples");
    const double dt = times[1] - times[0];
    const auto y = detrended(times, series);

    const std::size_t padded = std::bit_ceil(16 * n);
    std::vector<Complex> buf(padded, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        const double hann = 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(j) / (n - 1)));
        buf[j] = hann * y[j];
    }
    fft::transform(buf, {static_cast<int>(padded)}, 1, fft::Direction::forward);

    // Skip the lowest 1.5 record-length cycles, where the detrend residue sits.
    const std::size_t first = static_cast<std::size_t>(std::ceil(1.5 * padded / n));
    std::size_t peak = first;
    for (std::size_t k = first; k < padded / 2; ++k) {
        if (std::abs(buf[k]) > std::abs(buf[peak])) peak = k;
    }
    double offset = 0.0;
    if (peak > first && peak + 1 < padded / 2) {
        const double a = std::abs(buf[peak - 1]), b = std::abs(buf[peak]), c = std::abs(buf[peak + 1]);
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) offset = 0.5 * (a - c) / denom;
    }
    return two_pi * (static_cast<double>(peak) + offset) / (static_cast<double>(padded) * dt);
}

double oscillation_amplitude(const std::vector<double>& times, const std::vector<double>& series) {
    if (series.empty()) return 0.0;
    const auto y = detrended(times, series);
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    return *hi - *lo;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,x,y,z,vx,vy,vz,norm\n" << std::setprecision(17);
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        const auto& r = traj.position[j];
        const auto& v = traj.velocity[j];
        os << traj.times[j] << ',' << r[0] << ',' << r[1] << ',' << r[2] << ',' << v[0] << ',' << v[1] << ','
           << v[2] << ',' << traj.norm[j] << '\n';
    }
}

}  // namespace volkov
