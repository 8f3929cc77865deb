#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "volkov/barrier.hpp"
#include "volkov/feynman_scattering.hpp"
#include "volkov/frequency_separation.hpp"
#include "volkov/mode_expansion.hpp"
#include "volkov/observables.hpp"
#include "volkov/parallel.hpp"
#include "volkov/spectral_field.hpp"
#include "volkov/volkov_solution.hpp"

namespace volkov::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

double Params::num(const std::string& name) const {
    const auto it = numbers.find(name);
    if (it == numbers.end()) throw std::logic_error("unknown numeric parameter " + name);
    return it->second;
}

int Params::integer(const std::string& name, int lo, int hi) const {
    const double v = num(name);
    if (!(v >= lo && v <= hi) || v != std::floor(v)) {
        std::ostringstream os;
        os << "parameter " << name << "=" << v << " must be an integer in [" << lo << ", " << hi << "]";
        throw ValidationError(os.str());
    }
    return static_cast<int>(v);
}

const std::string& Params::text(const std::string& name) const {
    const auto it = texts.find(name);
    if (it == texts.end()) throw std::logic_error("unknown text parameter " + name);
    return it->second;
}

Params Command::defaults() const {
    Params p;
    for (const auto& o : numbers) p.numbers[o.name] = o.value;
    for (const auto& o : texts) p.texts[o.name] = o.value;
    return p;
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_artifact(const fs::path& dir, const std::string& name, bool binary = false) {
    std::ofstream os(dir / name, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
}

void write_json_artifact(const fs::path& dir, const std::string& name, const json& j) {
    auto os = open_artifact(dir, name);
    os << j.dump(2) << '\n';
}

FourMomentum momentum_from(const Params& P) {
    const double m = P.num("m");
    FourMomentum p = FourMomentum::make_on_shell(P.num("px"), P.num("py"), P.num("pz"), m);
    if (P.numbers.contains("E") && !std::isnan(P.num("E"))) {
        p = FourMomentum::make_off_shell(P.num("E"), p.px, p.py, p.pz);
        require_on_shell(p, m);
        p.on_shell = true;
    }
    return p;
}

PlaneWaveFieldSpec wave_from(const Params& P) {
    PlaneWaveFieldSpec field{P.num("A"), P.num("omega"), std::nullopt};
    validate(field);
    return field;
}

Spin spin_from(const Params& P) { return P.text("spin") == "down" ? Spin::down : Spin::up; }

json momentum_json(const FourMomentum& p) { return json::array({p.E, p.px, p.py, p.pz}); }

json grid_json(const GridSpec& g) {
    return {{"dims", g.dims}, {"lengths", g.lengths}, {"points", g.points}};
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> parse_list(const std::string& name, const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ValidationError("cannot parse " + name + " entry '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ValidationError(name + " needs at least one value");
    return values;
}

// ---------------------------------------------------------------- volkov

RunOutput run_volkov(const Params& P, const fs::path& out) {
    const double m = P.num("m");
    const FourMomentum p = momentum_from(P);
    const PlaneWaveFieldSpec field = wave_from(P);
    const int samples = P.integer("samples", 1, 10'000'000);
    const double extent = P.num("extent");
    if (!(extent > 0.0) || !std::isfinite(extent)) throw ValidationError("extent must be positive");
    const bool positron = P.flag("positron");

    std::mt19937_64 rng(static_cast<std::uint64_t>(P.integer("seed", 0, std::numeric_limits<int>::max())));
    std::uniform_real_distribution<double> coord(-extent, extent);
    std::vector<SpacetimePoint> points(static_cast<std::size_t>(samples));
    for (auto& X : points) {
        X.t = coord(rng);
        X.x = coord(rng);
        X.y = coord(rng);
        X.z = coord(rng);
    }
    std::vector<Bispinor> values(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        values[i] = positron ? positron_volkov_eval(p, field, points[i], m) : volkov_eval(p, field, points[i], m);
    });

    RunOutput result;
    {
        auto os = open_artifact(out, "volkov_samples.csv");
        os << "t,x,y,z";
        for (int c = 0; c < 4; ++c) os << ",re" << c << ",im" << c;
        os << ",norm2\n" << std::setprecision(17);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& X = points[i];
            os << X.t << ',' << X.x << ',' << X.y << ',' << X.z;
            for (int c = 0; c < 4; ++c) os << ',' << values[i][c].real() << ',' << values[i][c].imag();
            os << ',' << values[i].squaredNorm() << '\n';
        }
    }
    result.artifacts.push_back("volkov_samples.csv");
    result.summary["momentum"] = momentum_json(p);
    result.summary["branch"] = positron ? "positron" : "electron";

    if (P.flag("residual")) {
        const double h = P.num("step");
        const std::vector<double> steps{4.0 * h, 2.0 * h, h};
        std::vector<double> rms(steps.size()), worst(steps.size()), worst_rel(steps.size());
        for (std::size_t s = 0; s < steps.size(); ++s) {
            std::vector<double> res(points.size()), rel(points.size());
            parallel_for(points.size(), [&](std::size_t i) {
                res[i] = positron ? positron_dirac_residual(p, field, points[i], m, steps[s])
                                  : dirac_residual(p, field, points[i], m, steps[s]);
                rel[i] = res[i] / values[i].norm();
            });
            double sum = 0.0;
            for (double r : res) sum += r * r;
            rms[s] = std::sqrt(sum / res.size());
            worst[s] = *std::max_element(res.begin(), res.end());
            worst_rel[s] = *std::max_element(rel.begin(), rel.end());
        }
        auto os = open_artifact(out, "residual.csv");
        os << "h,rms_residual,max_residual,max_relative\n" << std::setprecision(17);
        for (std::size_t s = 0; s < steps.size(); ++s) {
            os << steps[s] << ',' << rms[s] << ',' << worst[s] << ',' << worst_rel[s] << '\n';
        }
        result.artifacts.push_back("residual.csv");
        result.summary["residual_order"] = log_slope(steps, rms);
        result.summary["max_relative_residual"] = worst_rel.back();
        result.tolerances["finite_difference_steps"] = steps;
    }
    write_json_artifact(out, "summary.json", result.summary);
    result.artifacts.push_back("summary.json");
    return result;
}

// ---------------------------------------------------------------- modes

RunOutput run_modes(const Params& P, const fs::path& out) {
    const double m = P.num("m");
    const FourMomentum p = momentum_from(P);
    const PlaneWaveFieldSpec field = wave_from(P);
    const double tail = P.num("tail");
    if (!(tail > 0.0)) throw ValidationError("tail tolerance must be positive");
    int N = P.integer("N", -1, max_truncation);
    if (N < 0) N = auto_truncation(p, field, m, tail);
    const int quad = P.integer("quad", 0, 1 << 22);
    const bool bessel = P.text("method") == "bessel";

    const ModeTable table = bessel ? mode_coefficients_bessel(p, field, m, N, tail)
                                   : mode_coefficients_quadrature(p, field, m, N, quad, tail);
    const ModeTable other = bessel ? mode_coefficients_quadrature(p, field, m, N, quad, tail)
                                   : mode_coefficients_bessel(p, field, m, N, tail);
    double agreement = 0.0;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        agreement = std::max(agreement, (table.entries[i].w - other.entries[i].w).cwiseAbs().maxCoeff());
    }
    const auto content = negative_energy_content(table);

    RunOutput result;
    {
        auto os = open_artifact(out, "modes.csv");
        write_csv(table, os);
    }
    result.artifacts.push_back("modes.csv");
    result.summary = {{"momentum", momentum_json(p)},
                      {"method", bessel ? "bessel" : "quadrature"},
                      {"N", N},
                      {"tail_norm", table.tail_norm},
                      {"quasi_shift", table.quasi_shift},
                      {"total_norm2", table.total_norm2()},
                      {"fraction_sign", content.fraction_sign},
                      {"fraction_projector", content.fraction_projector},
                      {"method_agreement", agreement}};
    write_json_artifact(out, "content.json", result.summary);
    result.artifacts.push_back("content.json");
    result.tolerances["tail"] = tail;
    return result;
}

// ---------------------------------------------------------------- separate

RunOutput run_separate(const Params& P, const fs::path& out) {
    const double m = P.num("m");
    const FourMomentum p = momentum_from(P);
    const PlaneWaveFieldSpec field = wave_from(P);
    const int wavelengths = P.integer("wavelengths", 1, 1 << 20);
    const int points = P.integer("points", 8, 1 << 24);
    const double t0 = P.num("t0");
    const double horizon = P.num("horizon");
    const int samples = P.integer("samples", 2, 1 << 16);
    const int phases = P.integer("phases", 1, 1 << 12);
    const GridSpec grid = GridSpec::line(wavelengths * field.period(), points);

    const SpinorField snapshot = sample_volkov(p, field, m, grid, t0);
    const SplitResult parts = split(snapshot);
    const auto flight = time_of_flight(snapshot, horizon, samples);

    std::vector<double> phase_times(static_cast<std::size_t>(phases)), phase_fraction(phase_times.size());
    for (int j = 0; j < phases; ++j) phase_times[static_cast<std::size_t>(j)] = t0 + field.period() * j / phases;
    parallel_for(phase_times.size(), [&](std::size_t j) {
        phase_fraction[j] = split(sample_volkov(p, field, m, grid, phase_times[j])).report.negative_fraction();
    });
    const auto [lo, hi] = std::minmax_element(phase_fraction.begin(), phase_fraction.end());

    const int N = auto_truncation(p, field, m);
    const double reference = negative_energy_content(mode_coefficients_quadrature(p, field, m, N)).fraction_projector;
    const double fraction = parts.report.negative_fraction();
    double max_phase_rel = 0.0;
    for (double f : phase_fraction) max_phase_rel = std::max(max_phase_rel, std::abs(f - reference) / reference);

    RunOutput result;
    {
        auto os = open_artifact(out, "separation.json");
        write_json(parts.report, os, true);
    }
    {
        auto os = open_artifact(out, "time_of_flight.csv");
        os << "t,total_norm2,positive_norm2,negative_norm2,negative_fraction\n" << std::setprecision(17);
        for (const auto& r : flight) {
            os << r.t0 << ',' << r.total_norm2 << ',' << r.positive_norm2 << ',' << r.negative_norm2 << ','
               << r.negative_fraction() << '\n';
        }
    }
    {
        auto os = open_artifact(out, "phases.csv");
        os << "t0,negative_fraction\n" << std::setprecision(17);
        for (std::size_t j = 0; j < phase_times.size(); ++j) os << phase_times[j] << ',' << phase_fraction[j] << '\n';
    }
    result.artifacts = {"separation.json", "time_of_flight.csv", "phases.csv"};
    if (P.flag("dump")) {
        auto os = open_artifact(out, "snapshot.bin", true);
        write_binary(snapshot, os);
        result.artifacts.push_back("snapshot.bin");
    }
    double flight_drift = 0.0;
    for (const auto& r : flight) flight_drift = std::max(flight_drift, std::abs(r.negative_fraction() - fraction));
    result.grid = grid_json(grid);
    result.summary = {{"momentum", momentum_json(p)},
                      {"negative_fraction", fraction},
                      {"mode_fraction_projector", reference},
                      {"relative_difference", std::abs(fraction - reference) / reference},
                      {"phase_spread", *hi - *lo},
                      {"phase_max_relative_difference", max_phase_rel},
                      {"flight_max_drift", flight_drift}};
    write_json_artifact(out, "summary.json", result.summary);
    result.artifacts.push_back("summary.json");
    result.tolerances["tail"] = default_tail_tolerance;
    return result;
}

// ---------------------------------------------------------------- born

void dump_history(const fs::path& out, const std::string& name, const FieldHistory& h) {
    auto os = open_artifact(out, name, true);
    for (const auto& slice : h.slices) write_binary(slice, os);
}

RunOutput run_born(const Params& P, const fs::path& out) {
    const double m = P.num("m");
    const double omega = P.num("omega");
    PlaneWaveFieldSpec field{P.num("A"), omega, std::nullopt};
    validate(field);
    const double T = field.period();
    field.envelope = RaisedCosineEnvelope{0.0, P.num("ramp") * T, P.num("plateau") * T};
    const int wavelengths = P.integer("wavelengths", 1, 1 << 20);
    const GridSpec grid = GridSpec::line(wavelengths * T, P.integer("points", 8, 1 << 20));

    PacketSpec packet;
    packet.mean_momentum = {P.num("kx"), P.num("ky"), P.num("kz")};
    packet.sigma = P.num("sigma");
    packet.sign = P.text("sign") == "negative" ? FrequencySign::negative : FrequencySign::positive;
    packet.spin = spin_from(P);

    ScatteringProblem problem{gaussian_packet(packet, grid, 0.0, m), field, P.num("coupling"),
                              P.integer("spp", 4, 1 << 16), P.num("margin"), {}};
    problem.born.order = P.integer("order", 0, 100000);
    problem.born.tolerance = P.num("tol");
    problem.born.max_order = P.integer("max_order", 1, 100000);
    const ScatteringRun run = run_scattering(problem);

    RunOutput result;
    {
        auto os = open_artifact(out, "channels.csv");
        write_channels_csv(run, os);
    }
    {
        auto os = open_artifact(out, "born.csv");
        os << "iteration,residual,ratio\n" << std::setprecision(17);
        for (std::size_t k = 0; k < run.born.residuals.size(); ++k) {
            os << k + 1 << ',' << run.born.residuals[k] << ',';
            if (k > 0) os << run.born.ratios[k - 1];
            os << '\n';
        }
    }
    result.artifacts = {"channels.csv", "born.csv"};
    if (P.flag("dump")) {
        dump_history(out, "psi.bin", run.born.solution);
        dump_history(out, "channel_a.bin", run.channels.a);
        dump_history(out, "channel_b.bin", run.channels.b);
        dump_history(out, "channel_c.bin", run.channels.c);
        dump_history(out, "channel_d.bin", run.channels.d);
        for (const char* f : {"psi.bin", "channel_a.bin", "channel_b.bin", "channel_c.bin", "channel_d.bin"}) {
            result.artifacts.emplace_back(f);
        }
    }

    const std::size_t last = run.channels.delta.size() - 1;
    const auto before = run.channels.norms(0), after = run.channels.norms(last);
    const double max_ratio =
        run.born.ratios.empty() ? 0.0 : *std::max_element(run.born.ratios.begin(), run.born.ratios.end());
    result.grid = grid_json(grid);
    result.grid["slices"] = run.field.times.size();
    result.grid["dt"] = run.born.solution.dt();
    result.summary = {
        {"order", run.born.order},
        {"equation_residual", run.born.equation_residual},
        {"max_ratio", max_ratio},
        {"t_on", run.field.t_on()},
        {"t_off", run.field.t_off()},
        {"channel_norms_first", before},
        {"channel_norms_last", after},
        {"delta_first", run.channels.delta.front()},
        {"delta_last", run.channels.delta.back()},
        {"delta_max", *std::max_element(run.channels.delta.begin(), run.channels.delta.end())},
        {"negative_fraction_first", split(run.born.solution.slices.front()).report.negative_fraction()},
        {"negative_fraction_last", split(run.born.solution.slices.back()).report.negative_fraction()}};
    if (P.flag("step_check")) result.summary["step_doubling_change"] = step_doubling_change(problem);
    write_json_artifact(out, "summary.json", result.summary);
    result.artifacts.push_back("summary.json");
    result.tolerances = {{"born", problem.born.tolerance}, {"max_order", problem.born.max_order}};
    return result;
}

// ---------------------------------------------------------------- zitter

double ehrenfest_deviation(const Trajectory& traj, int axis) {
    // d<r>/dt by the five-point stencil against the recorded <alpha>.
    const auto& t = traj.times;
    if (t.size() < 5) return nan;
    const double dt = t[1] - t[0];
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < t.size(); ++j) {
        const double d = (-traj.position[j + 2][axis] + 8.0 * traj.position[j + 1][axis] -
                          8.0 * traj.position[j - 1][axis] + traj.position[j - 2][axis]) /
                         (12.0 * dt);
        worst = std::max(worst, std::abs(d - traj.velocity[j][axis]));
    }
    return worst;
}

std::vector<double> column(const std::vector<Vec3>& v, int axis) {
    std::vector<double> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i][axis];
    return c;
}

RunOutput run_zitter(const Params& P, const fs::path& out) {
    const double m = P.num("m");
    const std::string& source = P.text("source");
    const std::string& proj_name = P.text("projection");
    const Projection projection = proj_name == "positive"   ? Projection::positive
                                  : proj_name == "negative" ? Projection::negative
                                                            : Projection::none;
    const double T = P.num("T");
    const int samples = P.integer("samples", 8, 1 << 20);

    RunOutput result;
    SpinorField f0;
    bool track = true;
    double expected = nan;
    if (source == "volkov") {
        const FourMomentum p = momentum_from(P);
        const PlaneWaveFieldSpec field = wave_from(P);
        const GridSpec grid =
            GridSpec::line(P.integer("wavelengths", 1, 1 << 20) * field.period(), P.integer("vpoints", 8, 1 << 24));
        f0 = sample_volkov(p, field, m, grid, 0.0);
        track = false;
        result.grid = grid_json(grid);
    } else {
        const int dims = P.integer("dims", 1, 3);
        if (dims == 2) throw ValidationError("dims must be 1 or 3");
        const double L = P.num("length");
        const int n = P.integer("points", 8, 1 << 24);
        const GridSpec grid = dims == 1 ? GridSpec::line(L, n) : GridSpec::box({L, L, L}, {n, n, n});
        PacketSpec spec;
        spec.mean_momentum = {P.num("kx"), P.num("ky"), P.num("kz")};
        spec.sigma = P.num("sigma");
        spec.spin = spin_from(P);
        const double mix = P.num("mix");
        if (!(mix >= 0.0 && mix <= 1.0)) throw ValidationError("mix must lie in [0, 1]");
        SpinorField plus = gaussian_packet(spec, grid, 0.0, m);
        spec.sign = FrequencySign::negative;
        SpinorField minus = gaussian_packet(spec, grid, 0.0, m);
        f0 = std::sqrt(1.0 - mix) * plus + std::sqrt(mix) * minus;
        expected = 2.0 * on_shell_energy(spec.mean_momentum, m);
        result.grid = grid_json(grid);
    }

    const Trajectory traj = trajectory(f0, T, samples, projection, track);
    {
        auto os = open_artifact(out, "trajectory.csv");
        write_csv(traj, os);
    }
    result.artifacts.push_back("trajectory.csv");

    json axes = json::object();
    const char* names[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
        const auto v = column(traj.velocity, a);
        json entry = {{"velocity_amplitude", oscillation_amplitude(traj.times, v)}};
        const auto r = column(traj.position, a);
        if (std::none_of(r.begin(), r.end(), [](double x) { return std::isnan(x); })) {
            const double amplitude = oscillation_amplitude(traj.times, r);
            entry["position_amplitude"] = amplitude;
            entry["position_frequency"] = amplitude > 1e-12 ? dominant_frequency(traj.times, r) : nan;
            entry["ehrenfest_deviation"] = ehrenfest_deviation(traj, a);
        } else {
            const double amplitude = entry["velocity_amplitude"].get<double>();
            entry["velocity_frequency"] = amplitude > 1e-12 ? dominant_frequency(traj.times, v) : nan;
        }
        axes[names[a]] = entry;
    }
    double drift = 0.0;
    for (double n : traj.norm) drift = std::max(drift, std::abs(n - traj.norm.front()));
    result.summary = {{"source", source}, {"projection", proj_name}, {"expected_frequency", expected},
                      {"norm_drift", drift}, {"axes", axes}};
    write_json_artifact(out, "summary.json", result.summary);
    result.artifacts.push_back("summary.json");
    return result;
}

// ---------------------------------------------------------------- barrier

RunOutput run_barrier(const Params& P, const fs::path& out) {
    const auto heights = parse_list("V", P.text("V"));
    const auto widths = parse_list("a", P.text("a"));
    if (heights.size() != widths.size()) throw ValidationError("V and a must list the same number of segments");
    BarrierSpec spec;
    for (std::size_t i = 0; i < heights.size(); ++i) spec.segments.push_back({heights[i], widths[i]});
    validate(spec);

    std::vector<double> energies;
    const int count = P.integer("count", 0, 1 << 24);
    if (count == 0) {
        energies.push_back(P.num("E"));
    } else {
        const double lo = P.num("Emin"), hi = P.num("Emax");
        if (!(lo > 0.0 && hi >= lo)) throw ValidationError("energy sweep needs 0 < Emin <= Emax");
        for (int i = 0; i < count; ++i) energies.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    std::vector<ScatteringCoefficients> rows(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) { rows[i] = scattering_coefficients(spec, energies[i]); });
    {
        auto os = open_artifact(out, "barrier.csv");
        write_barrier_csv(spec, energies, os);
    }
    double unitarity = 0.0, reciprocity = 0.0;
    for (const auto& r : rows) {
        unitarity = std::max({unitarity, std::abs(r.T_lr + r.R_l - 1.0), std::abs(r.T_rl + r.R_r - 1.0)});
        reciprocity = std::max(reciprocity, std::abs(r.T_lr - r.T_rl));
    }
    RunOutput result;
    result.artifacts.push_back("barrier.csv");
    result.summary = {{"segments", heights.size()},
                      {"energies", energies.size()},
                      {"max_unitarity_error", unitarity},
                      {"max_reciprocity_error", reciprocity}};
    if (rows.size() == 1) result.summary["T"] = rows.front().T_lr;
    write_json_artifact(out, "summary.json", result.summary);
    result.artifacts.push_back("summary.json");
    return result;
}

std::vector<NumberOption> momentum_options(double px, double py, double pz) {
    return {{"px", px, "electron momentum x (units of m)"},
            {"py", py, "electron momentum y"},
            {"pz", pz, "electron momentum z"},
            {"m", 1.0, "mass"}};
}

std::vector<NumberOption> wave_options(double A, double omega) {
    return {{"A", A, "wave amplitude, charge included (units of m)"}, {"omega", omega, "wave angular frequency"}};
}

template <class T>
std::vector<T> join(std::vector<T> a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<Command> build_commands() {
    std::vector<Command> list;
    const TextOption spin{"spin", "up", "packet spin along z", {"up", "down"}};

    list.push_back({"volkov",
                    "evaluate the Volkov wavefunction at random spacetime points",
                    join(join(momentum_options(0.3, 0.0, 0.2), wave_options(0.5, 0.8)),
                         {{"E", nan, "energy; must be on shell when given"},
                          {"samples", 100, "number of random spacetime points"},
                          {"seed", 1, "random seed"},
                          {"extent", 10.0, "points are uniform in [-extent, extent]^4"},
                          {"step", 1e-3, "finest finite-difference step"},
                          {"residual", 0, "write the residual convergence table", true},
                          {"positron", 0, "evaluate the charge-conjugate branch", true}}),
                    {},
                    run_volkov});

    list.push_back({"modes",
                    "plane-wave mode table and negative-energy content",
                    join(join(momentum_options(0.3, 0.0, 0.2), wave_options(0.5, 0.8)),
                         {{"E", nan, "energy; must be on shell when given"},
                          {"N", -1, "truncation order (-1 selects it from the tail tolerance)"},
                          {"tail", default_tail_tolerance, "tail tolerance"},
                          {"quad", 0, "quadrature points (0 = default)"}}),
                    {{"method", "quadrature", "coefficient method", {"quadrature", "bessel"}}},
                    run_modes});

    list.push_back({"separate",
                    "time-of-flight frequency separation of a Volkov snapshot",
                    join(join(momentum_options(0.0, 0.0, 0.0), wave_options(0.5, 0.8)),
                         {{"E", nan, "energy; must be on shell when given"},
                          {"wavelengths", 64, "box length in wavelengths"},
                          {"points", 4096, "grid points"},
                          {"t0", 0.0, "snapshot time"},
                          {"horizon", 20.0, "free flight span on each side of t0"},
                          {"samples", 9, "time-of-flight samples"},
                          {"phases", 8, "snapshot phases across one period"},
                          {"dump", 0, "write the snapshot in binary form", true}}),
                    {},
                    run_separate});

    list.push_back({"born",
                    "Born series for a switched wave and the four-channel split",
                    join(wave_options(1.0, 0.8),
                         {{"m", 1.0, "mass"},
                          {"coupling", 0.05, "signed coupling constant"},
                          {"ramp", 4.0, "ramp length in periods"},
                          {"plateau", 0.0, "plateau length in periods"},
                          {"margin", 1.0, "free slices before and after the pulse, in periods"},
                          {"wavelengths", 16, "box length in wavelengths"},
                          {"points", 128, "grid points"},
                          {"kx", 0.0, "packet transverse momentum x"},
                          {"ky", 0.0, "packet transverse momentum y"},
                          {"kz", 0.3, "packet mean momentum z"},
                          {"sigma", 0.1, "packet momentum width"},
                          {"spp", 64, "time slices per wave period"},
                          {"order", 0, "fixed Born order (0 = adaptive)"},
                          {"tol", 1e-12, "adaptive stop on the relative update"},
                          {"max_order", 200, "iteration cap"},
                          {"step_check", 0, "also run with half the time step", true},
                          {"dump", 0, "write full histories in binary form", true}}),
                    {{"sign", "positive", "incoming packet frequency sign", {"positive", "negative"}}, spin},
                    run_born});

    list.push_back({"zitter",
                    "expectation-value trajectories under free evolution",
                    join(join(momentum_options(0.0, 0.0, 0.0), wave_options(0.5, 0.8)),
                         {{"E", nan, "energy; must be on shell when given"},
                          {"dims", 1, "packet grid dimensions (1 or 3)"},
                          {"length", 200.0, "packet box length"},
                          {"points", 1024, "grid points per axis"},
                          {"wavelengths", 64, "Volkov box length in wavelengths"},
                          {"vpoints", 2048, "Volkov grid points"},
                          {"kx", 0.0, "packet mean momentum x"},
                          {"ky", 0.0, "packet mean momentum y"},
                          {"kz", 0.0, "packet mean momentum z"},
                          {"sigma", 0.05, "packet momentum width"},
                          {"mix", 0.5, "negative-frequency weight of the packet"},
                          {"T", 20.0 * std::numbers::pi, "duration"},
                          {"samples", 2048, "trajectory samples"}}),
                    {{"source", "packet", "initial state", {"packet", "volkov"}},
                     {"projection", "none", "frequency part kept", {"none", "positive", "negative"}},
                     spin},
                    run_zitter});

    list.push_back({"barrier",
                    "transfer-matrix scattering off a piecewise-constant barrier (hbar = 1, mass 1/2)",
                    {{"E", 0.5, "energy"},
                     {"Emin", 0.0, "sweep start"},
                     {"Emax", 0.0, "sweep end"},
                     {"count", 0, "sweep energies (0 = single energy E)"}},
                    {{"V", "1", "segment heights, comma separated", {}},
                     {"a", "1", "segment widths, comma separated", {}}},
                    run_barrier});
    return list;
}

}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> list = build_commands();
    return list;
}

const Command& find_command(const std::string& name) {
    for (const auto& c : commands()) {
        if (c.name == name) return c;
    }
    throw ValidationError("unknown command " + name);
}

}  // namespace volkov::cli
