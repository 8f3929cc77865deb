#include "volkov/barrier.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>

#include "volkov/parallel.hpp"
#include "volkov/spinor.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

/// Propagates (psi, psi') across one segment.
Eigen::Matrix2d segment_matrix(const BarrierSegment& seg, double E) {
    const double a = seg.width;
    const double diff = E - seg.height;
    Eigen::Matrix2d P;
    if (diff > 0.0) {
        const double kappa = std::sqrt(diff);
        P << std::cos(kappa * a), std::sin(kappa * a) / kappa, -kappa * std::sin(kappa * a), std::cos(kappa * a);
    } else if (diff < 0.0) {
        const double q = std::sqrt(-diff);
        P << std::cosh(q * a), std::sinh(q * a) / q, q * std::sinh(q * a), std::cosh(q * a);
    } else {
        P << 1.0, a, 0.0, 1.0;
    }
    return P;
}

/// Columns: (psi, psi') of e^{ikx} and e^{-ikx} at x.
Eigen::Matrix2cd plane_wave_basis(double k, double x) {
    const Complex ep = std::exp(I * k * x), em = std::exp(-I * k * x);
    Eigen::Matrix2cd W;
    W << ep, em, I * k * ep, -I * k * em;
    return W;
}

}  // namespace

double BarrierSpec::total_width() const {
    double w = 0.0;
    for (const auto& s : segments) w += s.width;
    return w;
}

void validate(const BarrierSpec& spec) {
    for (const auto& s : spec.segments) {
        if (!(s.width > 0.0) || !std::isfinite(s.width) || !std::isfinite(s.height)) {
            throw ValidationError("barrier segments need finite heights and positive widths");
        }
    }
}

Eigen::Matrix2cd transfer_matrix(const BarrierSpec& spec, double E) {
    validate(spec);
    if (!(E > 0.0) || !std::isfinite(E)) throw ValidationError("scattering energy must be positive");
    Eigen::Matrix2d P = Eigen::Matrix2d::Identity();
    for (const auto& seg : spec.segments) P = segment_matrix(seg, E) * P;
    const double k = std::sqrt(E);
    const Eigen::Matrix2cd left = plane_wave_basis(k, 0.0);
    const Eigen::Matrix2cd right = plane_wave_basis(k, spec.total_width());
    return right.inverse() * P.cast<Complex>() * left;
}

ScatteringCoefficients scattering_coefficients(const BarrierSpec& spec, double E) {
    const Eigen::Matrix2cd M = transfer_matrix(spec, E);
    const double m22 = std::norm(M(1, 1));
    // Left incidence: A = 1, D = 0 gives C = 1/M22, B = -M21/M22.
    // Right incidence: A = 0, D = 1 gives B = 1/M22, C = M12/M22.
    return {1.0 / m22, std::norm(M(1, 0)) / m22, 1.0 / m22, std::norm(M(0, 1)) / m22};
}

void write_barrier_csv(const BarrierSpec& spec, const std::vector<double>& energies, std::ostream& os) {
    std::vector<ScatteringCoefficients> rows(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) { rows[i] = scattering_coefficients(spec, energies[i]); });
    os << "E,T_lr,R_l,T_rl,R_r\n" << std::setprecision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << energies[i] << ',' << rows[i].T_lr << ',' << rows[i].R_l << ',' << rows[i].T_rl << ',' << rows[i].R_r
           << '\n';
    }
}

}  // namespace volkov
