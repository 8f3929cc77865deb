#pragma once

// 1D Schroedinger scattering off a piecewise-constant barrier, in units with
// hbar = 1 and particle mass 1/2, so that -psi'' + V psi = E psi and k = sqrt(E).
// The barrier occupies [0, total width]; V = 0 outside.

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

namespace volkov {

struct BarrierSegment {
    double height = 0.0;  // V_j
    double width = 0.0;   // a_j > 0
};

struct BarrierSpec {
    std::vector<BarrierSegment> segments;

    double total_width() const;
};

void validate(const BarrierSpec& spec);

/// M maps the plane-wave amplitudes (A, B) of A e^{ikx} + B e^{-ikx} on the
/// left of the barrier to the amplitudes on the right. det M = 1.
Eigen::Matrix2cd transfer_matrix(const BarrierSpec& spec, double E);

/// The four processes of one stationary solution.
struct ScatteringCoefficients {
    double T_lr = 0.0;  // transmission left -> right
    double R_l = 0.0;   // reflection from the left
    double T_rl = 0.0;  // transmission right -> left
    double R_r = 0.0;   // reflection from the right
};

ScatteringCoefficients scattering_coefficients(const BarrierSpec& spec, double E);

/// Columns: E,T_lr,R_l,T_rl,R_r
void write_barrier_csv(const BarrierSpec& spec, const std::vector<double>& energies, std::ostream& os);

}  // namespace volkov
