#pragma once

// Bispinor fields on a periodic lattice and their momentum representation.
//
// Momentum amplitudes use the continuum-normalized transform
//   f~(k) = (dx / sqrt(2 pi))^d  sum_j f(x_j) e^{-i k . x_j},
// so the norm sum |f|^2 * (cell volume) is the same in both
// representations. Positions are x_j = j dx, j = 0 .. n-1; wavenumbers are
// k = 2 pi j / L with j in [-n/2, n/2), stored in FFT order.
//
// A 1D grid is a line along z; the transverse momentum (kx, ky) is then a
// fixed parameter of the field and transverse coordinates are zero.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "volkov/field.hpp"
#include "volkov/spinor.hpp"

namespace volkov {

struct GridSpec {
    int dims = 1;
    std::array<double, 3> lengths{0.0, 0.0, 0.0};
    std::array<int, 3> points{1, 1, 1};

    static GridSpec line(double length_z, int points_z);
    static GridSpec box(const std::array<double, 3>& lengths, const std::array<int, 3>& points);

    bool active(int axis) const { return dims == 3 || axis == 2; }
    std::size_t size() const {
        return static_cast<std::size_t>(points[0]) * points[1] * points[2];
    }
    double spacing(int axis) const { return lengths[axis] / points[axis]; }
    double dk(int axis) const;
    double position_cell() const;
    double momentum_cell() const;

    std::array<int, 3> unflatten(std::size_t node) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;

    double coordinate(int axis, int index) const;
    /// Signed lattice index j in [-n/2, n/2) of FFT-ordered slot `index`.
    int signed_index(int axis, int index) const;
    double wavenumber(int axis, int index) const;

    bool operator==(const GridSpec&) const = default;
};

/// lengths > 0, power-of-two points >= 8 on active axes, 3D at most 64^3.
void validate(const GridSpec& grid);

enum class Representation { position, momentum };

struct SpinorField {
    GridSpec grid;
    Representation rep = Representation::position;
    double t = 0.0;
    double m = 1.0;
    std::array<double, 2> transverse{0.0, 0.0};  // (kx, ky) for 1D grids
    std::vector<Bispinor> values;

    static SpinorField zeros(const GridSpec& grid, Representation rep, double t, double m,
                             std::array<double, 2> transverse = {0.0, 0.0});

    /// Full wave vector of a momentum-representation node.
    Vec3 momentum(std::size_t node) const;
    /// Coordinates of a position-representation node.
    Vec3 position(std::size_t node) const;

    double cell() const;
    double norm2() const;
    double norm() const { return std::sqrt(norm2()); }

    SpinorField& operator+=(const SpinorField& other);
    SpinorField& operator-=(const SpinorField& other);
    SpinorField& operator*=(Complex s);
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(Complex s, SpinorField a);

/// <a|b> = sum_nodes a^dag b * cell; grids and representations must agree.
Complex inner_product(const SpinorField& a, const SpinorField& b);

/// Max over nodes of the bispinor difference norm; grids must agree.
double max_difference(const SpinorField& a, const SpinorField& b);

SpinorField to_momentum(const SpinorField& f);
SpinorField to_position(const SpinorField& f);
/// Converts if needed.
SpinorField as_momentum(const SpinorField& f);
SpinorField as_position(const SpinorField& f);

/// Snapshot psi_W(t0, 0, 0, z_j) on a 1D grid. The box must hold an integer
/// number of wave periods and the dressed momentum pz + delta must sit on the
/// lattice; every mode above the 1e-13 tail must fit inside the band.
SpinorField sample_volkov(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m,
                          const GridSpec& grid, double t0);

enum class FrequencySign { positive, negative };

struct PacketSpec {
    Vec3 mean_momentum{0.0, 0.0, 0.0};
    double sigma = 0.1;  // momentum-space width
    FrequencySign sign = FrequencySign::positive;
    Spin spin = Spin::up;
    /// Packet centre; defaults to the box centre when unset.
    std::optional<Vec3> center;
};

/// Momentum-space Gaussian exp(-(k - kbar)^2 / (4 sigma^2)) times u(k, s)
/// (positive) or v(-k, s) (negative), normalized to unit norm. Throws
/// ValidationError if the Gaussian exceeds 1e-12 at the band edge.
SpinorField gaussian_packet(const PacketSpec& spec, const GridSpec& grid, double t0, double m);

/// Little-endian binary snapshot; layout documented in the README.
void write_binary(const SpinorField& f, std::ostream& os);
SpinorField read_binary(std::istream& is);

/// Columns: x,y,z,density (position representation).
void write_density_csv(const SpinorField& f, std::ostream& os);

}  // namespace volkov
