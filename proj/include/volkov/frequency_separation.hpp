#pragma once

// Time-of-flight separation: positive/negative frequency parts of a snapshot
// through the momentum-space projectors Lambda_(+/-)(k), and exact free
// evolution exp(-i H(k) dt) in either time direction.

#include <iosfwd>
#include <vector>

#include "volkov/spectral_field.hpp"

namespace volkov {

struct NodeContent {
    Vec3 k;
    double pos2 = 0.0;
    double neg2 = 0.0;
};

struct SeparationReport {
    double t0 = 0.0;
    double total_norm2 = 0.0;
    double positive_norm2 = 0.0;
    double negative_norm2 = 0.0;
    std::vector<NodeContent> nodes;

    double positive_fraction() const { return positive_norm2 / total_norm2; }
    double negative_fraction() const { return negative_norm2 / total_norm2; }
};

struct SplitResult {
    SpinorField positive;
    SpinorField negative;
    SeparationReport report;
};

/// f_(+/-)(k) = Lambda_(+/-)(k) f(k). Position fields are converted first;
/// both parts come back in the momentum representation.
SplitResult split(const SpinorField& f);

/// f(k) -> e^{-i E dt} Lambda_+ f(k) + e^{+i E dt} Lambda_- f(k). Requires the
/// momentum representation; the timestamp advances by dt.
SpinorField free_evolve(const SpinorField& f, double dt);

/// Reports at `samples` equally spaced times covering [t0 - horizon, t0 + horizon].
std::vector<SeparationReport> time_of_flight(const SpinorField& f, double horizon, int samples);

/// {t0, total_norm2, positive_norm2, negative_norm2, nodes: [{k, pos2, neg2}]}
void write_json(const SeparationReport& report, std::ostream& os, bool include_nodes = true);

}  // namespace volkov
