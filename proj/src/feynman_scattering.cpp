#include "volkov/feynman_scattering.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "volkov/frequency_separation.hpp"
#include "volkov/parallel.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

double trapezoid_weight(std::size_t j, std::size_t count, double dt) {
    return (j == 0 || j + 1 == count) ? 0.5 * dt : dt;
}

FieldHistory combine(const FieldHistory& a, const FieldHistory& b, Complex sb) {
    FieldHistory out = a;
    for (std::size_t j = 0; j < out.size(); ++j) {
        for (std::size_t i = 0; i < out.slices[j].values.size(); ++i) {
            out.slices[j].values[i] += sb * b.slices[j].values[i];
        }
    }
    return out;
}

void require_matching(const FieldHistory& h, const CompactField& field) {
    if (h.times.size() != field.times.size()) {
        throw ValidationError("history slices do not match the field time lattice");
    }
    for (std::size_t j = 0; j < h.times.size(); ++j) {
        if (std::abs(h.times[j] - field.times[j]) > 1e-9 * std::max(1.0, std::abs(field.times[j]))) {
            throw ValidationError("history slices do not match the field time lattice");
        }
        if (!(h.slices[j].grid == field.grid)) throw ValidationError("history grid differs from the field grid");
    }
}

FieldHistory zeros_like(const FieldHistory& h) {
    FieldHistory out = h;
    for (auto& s : out.slices) {
        for (auto& v : s.values) v.setZero();
    }
    return out;
}

}  // namespace

double FieldHistory::max_norm() const {
    double n = 0.0;
    for (const auto& s : slices) n = std::max(n, s.norm());
    return n;
}

double max_distance(const FieldHistory& a, const FieldHistory& b) {
    if (a.size() != b.size()) throw ValidationError("histories have different lengths");
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, (a.slices[j] - b.slices[j]).norm());
    return d;
}

CompactField make_compact_field(const PlaneWaveFieldSpec& spec, const GridSpec& grid, int slices_per_period,
                                double margin_periods) {
    validate(spec);
    validate(grid);
    if (!spec.envelope) throw ValidationError("scattering needs a compactly supported field (envelope missing)");
    const double period = spec.period();
    if (spec.envelope->ramp < 4.0 * period * (1.0 - 1e-12)) {
        throw ValidationError("envelope ramps must last at least four wave periods");
    }
    if (grid.dims != 1) throw ValidationError("scattering runs on a 1D grid along z");
    const double wavelengths = grid.lengths[2] / period;
    if (std::abs(wavelengths - std::round(wavelengths)) > 1e-9 * std::max(1.0, wavelengths)) {
        throw ValidationError("box must hold an integer number of wavelengths");
    }
    if (slices_per_period < 4) throw ValidationError("need at least 4 time slices per wave period");
    if (!(margin_periods >= 0.0)) throw ValidationError("margin must be non-negative");

    CompactField f;
    f.spec = spec;
    f.grid = grid;
    const double dt = period / slices_per_period;
    const double t_start = spec.envelope->t_on - margin_periods * period;
    const double t_end = spec.envelope->t_off() + margin_periods * period;
    const auto count = static_cast<std::size_t>(std::ceil((t_end - t_start) / dt - 1e-9)) + 1;
    f.times.resize(count);
    f.ax.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double t = t_start + static_cast<double>(j) * dt;
        f.times[j] = t;
        f.ax[j].resize(grid.size());
        const double g = (*spec.envelope)(t);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double z = grid.coordinate(2, static_cast<int>(i));
            f.ax[j][i] = g * spec.A * std::cos(spec.omega * (t - z));
        }
    }
    return f;
}

FieldHistory free_history(const SpinorField& incoming, const std::vector<double>& times) {
    const SpinorField start = as_momentum(incoming);
    FieldHistory h;
    h.times = times;
    h.slices.resize(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) h.slices[j] = free_evolve(start, times[j] - start.t);
    return h;
}

FieldHistory interaction_source(const FieldHistory& psi, const CompactField& field, double coupling) {
    require_matching(psi, field);
    const Matrix4& alpha_x = gammas().alpha[0];
    FieldHistory out = zeros_like(psi);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const auto& ax = field.ax[j];
        bool active = false;
        for (double a : ax) active = active || a != 0.0;
        if (!active || coupling == 0.0) continue;
        SpinorField pos = to_position(psi.slices[j]);
        // gamma^0 gamma^mu A_mu = -alpha_x A^1
        for (std::size_t i = 0; i < pos.values.size(); ++i) {
            pos.values[i] = -coupling * ax[i] * (alpha_x * pos.values[i]);
        }
        out.slices[j] = to_momentum(pos);
    }
    return out;
}

FieldHistory gated_kernel_integral(const FieldHistory& source, KernelSign sign, TimeGate gate) {
    FieldHistory out = zeros_like(source);
    const std::size_t count = source.size();
    if (count == 0) return out;
    const double dt = source.dt();
    const SpinorField& ref = source.slices.front();
    parallel_for(ref.values.size(), [&](std::size_t i) {
        const auto proj = energy_projectors(ref.momentum(i), ref.m);
        const Matrix4& lambda = sign == KernelSign::plus ? proj.plus : proj.minus;
        // K(tau) = Lambda e^{-/+ i E tau}; step factor for tau -> tau + dt.
        const Complex step = std::exp((sign == KernelSign::plus ? -I : I) * proj.energy * dt);
        Bispinor carry = Bispinor::Zero();
        if (gate == TimeGate::retarded) {
            for (std::size_t j = 0; j < count; ++j) {
                const Bispinor term = trapezoid_weight(j, count, dt) * (lambda * source.slices[j].values[i]);
                out.slices[j].values[i] = I * (carry + 0.5 * term);
                carry = step * (carry + term);
            }
        } else {
            const Complex back = std::conj(step);
            for (std::size_t j = count; j-- > 0;) {
                const Bispinor term = trapezoid_weight(j, count, dt) * (lambda * source.slices[j].values[i]);
                out.slices[j].values[i] = I * (carry + 0.5 * term);
                carry = back * (carry + term);
            }
        }
    });
    return out;
}

FieldHistory apply_feynman_propagator(const FieldHistory& source) {
    const FieldHistory ret = gated_kernel_integral(source, KernelSign::plus, TimeGate::retarded);
    const FieldHistory adv = gated_kernel_integral(source, KernelSign::minus, TimeGate::advanced);
    // -i Ret_+ + i Adv_-
    return combine(adv, ret, -1.0);
}

SpinorField apply_feynman_propagator(const FieldHistory& source, double t_eval) {
    if (!std::isfinite(t_eval) || std::abs(t_eval) > 1e8) {
        throw ValidationError("propagator evaluation time outside the computable range");
    }
    if (source.size() == 0) throw ValidationError("empty source history");
    const std::size_t count = source.size();
    const double dt = source.dt();
    SpinorField out = source.slices.front();
    out.t = t_eval;
    parallel_for(out.values.size(), [&](std::size_t i) {
        const auto proj = energy_projectors(out.momentum(i), out.m);
        Bispinor acc = Bispinor::Zero();
        for (std::size_t l = 0; l < count; ++l) {
            const double tau = t_eval - source.times[l];
            const double w = trapezoid_weight(l, count, dt);
            const double theta_ret = std::abs(tau) <= 1e-9 * dt ? 0.5 : (tau > 0.0 ? 1.0 : 0.0);
            const double theta_adv = 1.0 - theta_ret;
            const Bispinor& s = source.slices[l].values[i];
            if (theta_ret > 0.0) acc += (-I * theta_ret * w) * std::exp(-I * proj.energy * tau) * (proj.plus * s);
            if (theta_adv > 0.0) acc += (I * theta_adv * w) * std::exp(I * proj.energy * tau) * (proj.minus * s);
        }
        out.values[i] = acc;
    });
    return out;
}

BornResult born_solve(const FieldHistory& incoming, const CompactField& field, double coupling,
                      const BornOptions& options) {
    require_matching(incoming, field);
    if (options.order < 0) throw ValidationError("Born order must be >= 1 (or 0 for adaptive)");
    const double reference = incoming.max_norm();
    if (!(reference > 0.0)) throw ValidationError("incoming wave has zero norm");

    BornResult result;
    FieldHistory psi = incoming;
    const int limit = options.order > 0 ? options.order : options.max_order;
    for (int k = 1; k <= limit; ++k) {
        FieldHistory next = combine(incoming, apply_feynman_propagator(interaction_source(psi, field, coupling)), 1.0);
        const double residual = max_distance(next, psi) / reference;
        result.residuals.push_back(residual);
        if (result.residuals.size() > 1) {
            const double prev = result.residuals[result.residuals.size() - 2];
            const double ratio = prev > 0.0 ? residual / prev : 0.0;
            result.ratios.push_back(ratio);
            // Once the update reaches round-off the ratio is meaningless.
            if (ratio >= 1.0 && residual > 1e2 * options.tolerance) {
                std::ostringstream os;
                os << "Born series does not contract: residual ratio " << ratio << " at iteration " << k;
                throw NumericalError(os.str());
            }
        }
        psi = std::move(next);
        result.order = k;
        if (options.order == 0 && residual < options.tolerance) break;
        if (options.order == 0 && k == limit) {
            std::ostringstream os;
            os << "Born series did not reach tolerance " << options.tolerance << " within " << limit
               << " iterations (last residual " << residual << ")";
            throw NumericalError(os.str());
        }
    }
    const FieldHistory check =
        combine(incoming, apply_feynman_propagator(interaction_source(psi, field, coupling)), 1.0);
    result.equation_residual = max_distance(check, psi) / reference;
    result.solution = std::move(psi);
    return result;
}

std::array<double, 4> ChannelSet::norms(std::size_t slice) const {
    return {a.slices[slice].norm(), b.slices[slice].norm(), c.slices[slice].norm(), d.slices[slice].norm()};
}

ChannelSet channel_split(const FieldHistory& solution, const FieldHistory& incoming, const CompactField& field,
                         double coupling) {
    require_matching(solution, field);
    require_matching(incoming, field);
    FieldHistory free_plus = incoming, free_minus = incoming;
    for (std::size_t j = 0; j < incoming.size(); ++j) {
        auto parts = split(incoming.slices[j]);
        free_plus.slices[j] = std::move(parts.positive);
        free_minus.slices[j] = std::move(parts.negative);
    }
    const FieldHistory source = interaction_source(solution, field, coupling);

    ChannelSet ch;
    ch.a = combine(free_plus, gated_kernel_integral(source, KernelSign::plus, TimeGate::retarded), 1.0);
    ch.b = combine(free_minus, gated_kernel_integral(source, KernelSign::minus, TimeGate::advanced), 1.0);
    ch.c = combine(free_minus, gated_kernel_integral(source, KernelSign::plus, TimeGate::advanced), 1.0);
    ch.d = combine(free_plus, gated_kernel_integral(source, KernelSign::minus, TimeGate::retarded), 1.0);

    ch.delta.resize(solution.size());
    for (std::size_t j = 0; j < solution.size(); ++j) {
        SpinorField half = ch.a.slices[j] + ch.b.slices[j] + ch.c.slices[j] + ch.d.slices[j];
        half *= 0.5;
        ch.delta[j] = (solution.slices[j] - half).norm();
    }
    return ch;
}

ScatteringRun run_scattering(const ScatteringProblem& problem) {
    ScatteringRun run;
    run.field = make_compact_field(problem.field, problem.incoming.grid, problem.slices_per_period,
                                   problem.margin_periods);
    run.incoming = free_history(problem.incoming, run.field.times);
    run.born = born_solve(run.incoming, run.field, problem.coupling, problem.born);
    run.channels = channel_split(run.born.solution, run.incoming, run.field, problem.coupling);
    return run;
}

double step_doubling_change(const ScatteringProblem& problem) {
    const ScatteringRun coarse = run_scattering(problem);
    ScatteringProblem fine_problem = problem;
    fine_problem.slices_per_period *= 2;
    const ScatteringRun fine = run_scattering(fine_problem);
    double change = 0.0;
    const auto compare = [&](std::size_t jc, std::size_t jf) {
        const auto nc = coarse.channels.norms(jc);
        const auto nf = fine.channels.norms(jf);
        for (int c = 0; c < 4; ++c) change = std::max(change, std::abs(nc[c] - nf[c]));
    };
    compare(0, 0);
    compare(coarse.channels.delta.size() - 1, fine.channels.delta.size() - 1);
    return change / problem.incoming.norm();
}

void write_channels_csv(const ScatteringRun& run, std::ostream& os) {
    os << "t,norm_psi,norm_a,norm_b,norm_c,norm_d,delta\n" << std::setprecision(17);
    for (std::size_t j = 0; j < run.field.times.size(); ++j) {
        const auto n = run.channels.norms(j);
        os << run.field.times[j] << ',' << run.born.solution.slices[j].norm() << ',' << n[0] << ',' << n[1] << ','
           << n[2] << ',' << n[3] << ',' << run.channels.delta[j] << '\n';
    }
}

}  // namespace volkov
