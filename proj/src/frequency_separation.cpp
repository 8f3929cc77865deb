#include "volkov/frequency_separation.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "volkov/parallel.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

}  // namespace

SplitResult split(const SpinorField& f) {
    const SpinorField mom = as_momentum(f);
    SplitResult out{mom, mom, {}};
    auto& rep = out.report;
    rep.t0 = mom.t;
    rep.nodes.resize(mom.values.size());
    const double cell = mom.cell();
    parallel_for(mom.values.size(), [&](std::size_t i) {
        const Vec3 k = mom.momentum(i);
        const auto proj = energy_projectors(k, mom.m);
        out.positive.values[i] = proj.plus * mom.values[i];
        out.negative.values[i] = proj.minus * mom.values[i];
        rep.nodes[i] = {k, out.positive.values[i].squaredNorm() * cell,
                        out.negative.values[i].squaredNorm() * cell};
    });
    // Fixed-order reduction.
    for (const auto& n : rep.nodes) {
        rep.positive_norm2 += n.pos2;
        rep.negative_norm2 += n.neg2;
    }
    rep.total_norm2 = mom.norm2();
    return out;
}

SpinorField free_evolve(const SpinorField& f, double dt) {
    if (f.rep != Representation::momentum) throw ValidationError("free_evolve expects a momentum field");
    SpinorField out = f;
    out.t = f.t + dt;
    if (dt == 0.0) return out;
    parallel_for(f.values.size(), [&](std::size_t i) {
        const auto proj = energy_projectors(f.momentum(i), f.m);
        const double phase = proj.energy * dt;
        out.values[i] = std::exp(-I * phase) * (proj.plus * f.values[i]) +
                        std::exp(I * phase) * (proj.minus * f.values[i]);
    });
    return out;
}

std::vector<SeparationReport> time_of_flight(const SpinorField& f, double horizon, int samples) {
    if (!(horizon > 0.0)) throw ValidationError("time-of-flight horizon must be positive");
    if (samples < 2) throw ValidationError("time-of-flight needs at least two samples");
    const SpinorField mom = as_momentum(f);
    std::vector<SeparationReport> series(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double dt = -horizon + 2.0 * horizon * j / (samples - 1);
        series[static_cast<std::size_t>(j)] = split(free_evolve(mom, dt)).report;
    }
    return series;
}

void write_json(const SeparationReport& report, std::ostream& os, bool include_nodes) {
    nlohmann::ordered_json j;
    j["t0"] = report.t0;
    j["total_norm2"] = report.total_norm2;
    j["positive_norm2"] = report.positive_norm2;
    j["negative_norm2"] = report.negative_norm2;
    auto nodes = nlohmann::ordered_json::array();
    if (include_nodes) {
        for (const auto& n : report.nodes) {
            nodes.push_back({{"k", n.k}, {"pos2", n.pos2}, {"neg2", n.neg2}});
        }
    }
    j["nodes"] = std::move(nodes);
    os << j.dump(2) << '\n';
}

}  // namespace volkov
