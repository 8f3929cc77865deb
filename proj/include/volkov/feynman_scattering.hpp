#pragma once

// Integral-equation treatment of a switched plane wave on a 1D grid:
//
//   psi(t) = psi_F(t) + \int dt' S_F(t - t') V(t') psi(t'),
//   V = coupling * gamma^mu A_mu,  A^1 = g(t) A cos[omega (t - z)].
//
// With s = gamma^0 V psi the propagator acts per momentum node as
//
//   S_F s = -i [ theta(t - t') K_+(t - t') - theta(t' - t) K_-(t - t') ] s,
//   K_(+/-)(tau) = Lambda_(+/-) e^{-/+ i E tau},
//
// which is the Green function of (i gamma.d - m). The kernels
// S^(+/-) = +/- i (i gamma.d + m) \int d^3p e^{-/+ i p.x} / (2 (2pi)^3 E) give
// S^(+/-) gamma^0 = i K_(+/-); the four channel wavefunctions are assembled
// from them term by term. Time integrals use the trapezoid rule on uniform
// slices with theta(0) = 1/2.

#include <iosfwd>
#include <vector>

#include "volkov/field.hpp"
#include "volkov/spectral_field.hpp"

namespace volkov {

/// Bispinor fields (momentum representation) on uniform time slices.
struct FieldHistory {
    std::vector<double> times;
    std::vector<SpinorField> slices;

    std::size_t size() const { return slices.size(); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    /// Max over slices of the field norm.
    double max_norm() const;
};

/// max_j ||a_j - b_j||
double max_distance(const FieldHistory& a, const FieldHistory& b);

/// A^1(t, z) sampled on the slice times and the grid nodes.
struct CompactField {
    PlaneWaveFieldSpec spec;
    GridSpec grid;
    std::vector<double> times;
    std::vector<std::vector<double>> ax;  // [slice][node]

    double t_on() const { return spec.envelope->t_on; }
    double t_off() const { return spec.envelope->t_off(); }
};

/// Requires a raised-cosine envelope whose ramps last at least four wave
/// periods and a 1D box holding an integer number of wavelengths. Slices
/// start `margin_periods` before the switch-on and end as long after the
/// switch-off.
CompactField make_compact_field(const PlaneWaveFieldSpec& spec, const GridSpec& grid, int slices_per_period,
                                double margin_periods = 1.0);

/// psi_F(t_j) obtained by free evolution of `incoming` to every slice time.
FieldHistory free_history(const SpinorField& incoming, const std::vector<double>& times);

/// s(t_j) = gamma^0 V psi(t_j), evaluated in position space.
FieldHistory interaction_source(const FieldHistory& psi, const CompactField& field, double coupling);

/// S_F applied to a source history, evaluated at every slice time.
FieldHistory apply_feynman_propagator(const FieldHistory& source);

/// S_F applied to a source history at an arbitrary time.
SpinorField apply_feynman_propagator(const FieldHistory& source, double t_eval);

enum class KernelSign { plus, minus };
enum class TimeGate { retarded, advanced };

/// i \int dt' theta(+/-(t - t')) K_(+/-)(t - t') s(t') at every slice: the
/// S^(+/-) integral with a single theta gate.
FieldHistory gated_kernel_integral(const FieldHistory& source, KernelSign sign, TimeGate gate);

struct BornOptions {
    int order = 0;             // fixed number of iterations; 0 = adaptive
    double tolerance = 1e-12;  // adaptive stop on the relative update
    int max_order = 200;
};

struct BornResult {
    FieldHistory solution;
    std::vector<double> residuals;  // relative ||psi^(k+1) - psi^(k)|| per iteration
    std::vector<double> ratios;     // residuals[k] / residuals[k-1]
    int order = 0;
    double equation_residual = 0.0;  // ||psi - psi_F - S_F V psi|| / ||psi_F||
};

/// Iterates psi^(k+1) = psi_F + S_F V psi^(k) from psi^(0) = psi_F. Throws
/// NumericalError when an update fails to shrink (ratio >= 1).
BornResult born_solve(const FieldHistory& incoming, const CompactField& field, double coupling,
                      const BornOptions& options = {});

/// Channel wavefunctions (a) electron scattering, (b) positron scattering,
/// (c) pair creation, (d) pair annihilation:
///   a = psi_F^+ + \int theta(t - t') S^+ V psi
///   b = psi_F^- + \int theta(t' - t) S^- V psi
///   c = psi_F^- + \int theta(t' - t) S^+ V psi
///   d = psi_F^+ + \int theta(t - t') S^- V psi
/// and the gap delta(t) = ||psi - (a + b + c + d)/2||.
struct ChannelSet {
    FieldHistory a, b, c, d;
    std::vector<double> delta;

    std::array<double, 4> norms(std::size_t slice) const;
};

ChannelSet channel_split(const FieldHistory& solution, const FieldHistory& incoming, const CompactField& field,
                         double coupling);

struct ScatteringProblem {
    SpinorField incoming;  // free state at any reference time
    PlaneWaveFieldSpec field;
    double coupling = 0.05;
    int slices_per_period = 64;
    double margin_periods = 1.0;
    BornOptions born;
};

struct ScatteringRun {
    CompactField field;
    FieldHistory incoming;
    BornResult born;
    ChannelSet channels;
};

ScatteringRun run_scattering(const ScatteringProblem& problem);

/// Max relative change of the channel norms at the first and last slice when
/// the time step is halved.
double step_doubling_change(const ScatteringProblem& problem);

/// Columns: t,norm_psi,norm_a,norm_b,norm_c,norm_d,delta
void write_channels_csv(const ScatteringRun& run, std::ostream& os);

}  // namespace volkov
