#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "volkov/frequency_separation.hpp"
#include "volkov/observables.hpp"

using namespace volkov;

namespace {

constexpr double pi = std::numbers::pi;

SpinorField mixed(const GridSpec& grid, Vec3 k, double sigma, double mix, Spin spin = Spin::up,
                  Spin minus_spin = Spin::up) {
    PacketSpec spec;
    spec.mean_momentum = k;
    spec.sigma = sigma;
    spec.spin = spin;
    const SpinorField plus = gaussian_packet(spec, grid, 0.0, 1.0);
    spec.sign = FrequencySign::negative;
    spec.spin = minus_spin;
    const SpinorField minus = gaussian_packet(spec, grid, 0.0, 1.0);
    return std::sqrt(1.0 - mix) * plus + std::sqrt(mix) * minus;
}

std::vector<double> column(const std::vector<Vec3>& v, int axis) {
    std::vector<double> c;
    for (const auto& x : v) c.push_back(x[axis]);
    return c;
}

double ehrenfest(const Trajectory& tr, int axis) {
    const double dt = tr.times[1] - tr.times[0];
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < tr.times.size(); ++j) {
        const auto& r = tr.position;
        const double d = (-r[j + 2][axis] + 8 * r[j + 1][axis] - 8 * r[j - 1][axis] + r[j - 2][axis]) / (12 * dt);
        worst = std::max(worst, std::abs(d - tr.velocity[j][axis]));
    }
    return worst;
}

}  // namespace

TEST_CASE("position of symmetric and translated packets") {
    const double L = 200.0;
    const auto grid = GridSpec::line(L, 1024);
    PacketSpec spec;
    spec.sigma = 0.05;
    const auto centred = gaussian_packet(spec, grid, 0.0, 1.0);
    CHECK(position_expectation(to_position(centred))[2] == doctest::Approx(L / 2).epsilon(1e-12));
    for (double z0 : {10.0, 60.0, 199.0}) {
        spec.center = Vec3{0.0, 0.0, z0};
        const auto moved = to_position(gaussian_packet(spec, grid, 0.0, 1.0));
        const double z = position_expectation(moved)[2];
        const double wrapped = std::fmod(z0, L);
        CHECK(std::abs(z - wrapped) <= 1e-9);
        CHECK(position_expectation(moved)[0] == 0.0);
    }
}

TEST_CASE("position in three dimensions") {
    const auto grid = GridSpec::box({60.0, 60.0, 60.0}, {32, 32, 32});
    PacketSpec spec;
    spec.sigma = 0.12;
    spec.center = Vec3{5.0, 20.0, 53.0};
    const auto r = position_expectation(to_position(gaussian_packet(spec, grid, 0.0, 1.0)));
    CHECK(std::abs(r[0] - 5.0) <= 1e-6);
    CHECK(std::abs(r[1] - 20.0) <= 1e-6);
    CHECK(std::abs(r[2] - 53.0) <= 1e-6);
}

TEST_CASE("position preconditions") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto zero = SpinorField::zeros(grid, Representation::position, 0.0, 1.0);
    CHECK_THROWS_AS(position_expectation(zero), ValidationError);
    CHECK_THROWS_AS(velocity_expectation(zero), ValidationError);
    SpinorField wide = zero;
    for (auto& v : wide.values) v << 1.0, 0.0, 0.0, 0.0;
    CHECK_THROWS_WITH_AS(position_expectation(wide), doctest::Contains("L/4"), ValidationError);
}

TEST_CASE("a positive-energy packet at rest stays put") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto f = mixed(grid, {0, 0, 0}, 0.05, 0.0);
    const auto tr = trajectory(f, 10.0, 101, Projection::none);
    const double z0 = tr.position.front()[2];
    for (const auto& r : tr.position) CHECK(std::abs(r[2] - z0) <= 1e-8);
    for (const auto& v : tr.velocity) CHECK(std::hypot(v[0], v[1], v[2]) <= 1e-8);
}

TEST_CASE("zitterbewegung frequency at rest is 2m") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto tr = trajectory(mixed(grid, {0, 0, 0}, 0.05, 0.5), 20 * pi, 2048, Projection::none);
    const auto z = column(tr.position, 2);
    const double w = dominant_frequency(tr.times, z);
    MESSAGE("rest frequency " << w);
    CHECK(std::abs(w - 2.0) <= 0.01 * 2.0);
    CHECK(oscillation_amplitude(tr.times, z) > 0.1);
}

TEST_CASE("zitterbewegung frequency follows 2E at finite momentum") {
    const auto grid = GridSpec::line(200.0, 1024);
    for (double k : {0.0, 0.5, 1.0}) {
        const auto tr = trajectory(mixed(grid, {0, 0, k}, 0.05, 0.5), 20 * pi, 2048, Projection::none);
        const double w = dominant_frequency(tr.times, column(tr.velocity, 2));
        const double expected = 2.0 * std::sqrt(1.0 + k * k);
        MESSAGE("k = " << k << ": frequency " << w << ", expected " << expected);
        CHECK(std::abs(w - expected) <= 0.02 * expected);
    }
}

TEST_CASE("projected packets do not oscillate") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto f = mixed(grid, {0, 0, 0.3}, 0.05, 0.5);
    const auto full = trajectory(f, 20 * pi, 2048, Projection::none);
    const double a_full = oscillation_amplitude(full.times, column(full.position, 2));
    for (auto proj : {Projection::positive, Projection::negative}) {
        const auto tr = trajectory(f, 20 * pi, 2048, proj);
        CHECK(tr.provenance == proj);
        const double a = oscillation_amplitude(tr.times, column(tr.position, 2));
        MESSAGE("mixed amplitude " << a_full << ", projected " << a);
        CHECK(a <= 1e-6 * a_full);
        CHECK(oscillation_amplitude(tr.times, column(tr.velocity, 2)) <= 1e-12);
    }
    const auto pure = mixed(grid, {0, 0, 0.3}, 0.05, 0.0);
    CHECK_THROWS_AS(trajectory(pure, 1.0, 8, Projection::negative), ValidationError);
}

TEST_CASE("Ehrenfest relation with a fourth-order stencil") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto tr = trajectory(mixed(grid, {0, 0, 0.4}, 0.05, 0.3), 10.0, 1001, Projection::none);
    const double dev = ehrenfest(tr, 2);
    MESSAGE("Ehrenfest deviation " << dev);
    CHECK(dev <= 1e-6);
}

TEST_CASE("transverse motion on a 1D grid") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto f = mixed(grid, {0.4, 0, 0}, 0.05, 0.5, Spin::up, Spin::down);
    const auto tr = trajectory(f, 10.0, 1001, Projection::none);
    CHECK(tr.position.front()[0] == 0.0);
    CHECK(ehrenfest(tr, 0) <= 1e-6);
    CHECK(ehrenfest(tr, 1) <= 1e-6);
    CHECK(oscillation_amplitude(tr.times, column(tr.velocity, 0)) > 1e-3);
}

TEST_CASE("zitterbewegung of <x> in three dimensions") {
    const auto grid = GridSpec::box({40.0, 40.0, 40.0}, {32, 32, 32});
    const auto f = mixed(grid, {0, 0, 0}, 0.12, 0.5, Spin::up, Spin::down);
    const auto tr = trajectory(f, 10 * pi, 512, Projection::none);
    const auto x = column(tr.position, 0);
    const double w = dominant_frequency(tr.times, x);
    MESSAGE("3D <x> frequency " << w << ", amplitude " << oscillation_amplitude(tr.times, x));
    CHECK(std::abs(w - 2.0) <= 0.02 * 2.0);
    double drift = 0.0;
    for (double n : tr.norm) drift = std::max(drift, std::abs(n - tr.norm.front()));
    CHECK(drift <= 1e-10);
}

TEST_CASE("Volkov snapshot: oscillation carried by the negative-energy admixture") {
    const PlaneWaveFieldSpec field{0.5, 0.8, std::nullopt};
    const auto p = FourMomentum::make_on_shell(0, 0, 0, 1.0);
    const auto grid = GridSpec::line(64 * field.period(), 2048);
    const auto snap = sample_volkov(p, field, 1.0, grid, 0.0);
    const auto full = trajectory(snap, 20 * pi, 1024, Projection::none, false);
    const auto plus = trajectory(snap, 20 * pi, 1024, Projection::positive, false);
    CHECK(std::isnan(full.position.front()[2]));
    const double a_full = oscillation_amplitude(full.times, column(full.velocity, 2));
    const double a_plus = oscillation_amplitude(plus.times, column(plus.velocity, 2));
    MESSAGE("velocity amplitude " << a_full << " full, " << a_plus << " positive part");
    CHECK(a_full > 1e-3);
    CHECK(a_plus <= 1e-10 * a_full + 1e-12);
}

TEST_CASE("norm is conserved along the trajectory") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto tr = trajectory(mixed(grid, {0, 0, 0.7}, 0.05, 0.2), 50.0, 200, Projection::none);
    for (double n : tr.norm) CHECK(std::abs(n - tr.norm.front()) <= 1e-10);
    CHECK_THROWS_AS(trajectory(mixed(grid, {0, 0, 0}, 0.05, 0.5), 0.0, 10, Projection::none), ValidationError);
    CHECK_THROWS_AS(trajectory(mixed(grid, {0, 0, 0}, 0.05, 0.5), 1.0, 1, Projection::none), ValidationError);
}

TEST_CASE("frequency of a synthetic series") {
    std::vector<double> t, y;
    for (int j = 0; j < 1000; ++j) {
        t.push_back(0.05 * j);
        y.push_back(0.3 * t.back() + 2.0 * std::sin(3.1 * t.back() + 0.4) + 0.01 * std::cos(7.0 * t.back()));
    }
    CHECK(dominant_frequency(t, y) == doctest::Approx(3.1).epsilon(1e-3));
    CHECK(oscillation_amplitude(t, y) == doctest::Approx(4.0).epsilon(0.02));
    CHECK_THROWS_AS(dominant_frequency({0, 1, 2}, {0, 1, 0}), ValidationError);
}

TEST_CASE("trajectory CSV") {
    const auto grid = GridSpec::line(200.0, 1024);
    const auto tr = trajectory(mixed(grid, {0, 0, 0}, 0.05, 0.5), 1.0, 11, Projection::none);
    std::ostringstream os;
    write_csv(tr, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,y,z,vx,vy,vz,norm");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11);
}
