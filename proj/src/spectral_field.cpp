#include "volkov/spectral_field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "volkov/fft.hpp"
#include "volkov/mode_expansion.hpp"
#include "volkov/volkov_solution.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<int> active_shape(const GridSpec& g) {
    if (g.dims == 1) return {g.points[2]};
    return {g.points[0], g.points[1], g.points[2]};
}

void require_same_grid(const SpinorField& a, const SpinorField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep || a.values.size() != b.values.size()) {
        throw ValidationError("spinor fields live on different grids or representations");
    }
}

SpinorField transform(const SpinorField& f, Representation target) {
    const auto& g = f.grid;
    const std::size_t nodes = g.size();
    std::vector<Complex> buffer(nodes * 4);
    for (std::size_t i = 0; i < nodes; ++i) {
        for (int c = 0; c < 4; ++c) buffer[4 * i + c] = f.values[i][c];
    }
    const bool forward = target == Representation::momentum;
    fft::transform(buffer, active_shape(g), 4, forward ? fft::Direction::forward : fft::Direction::backward);

    double scale = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        if (!g.active(axis)) continue;
        scale *= (forward ? g.spacing(axis) : g.dk(axis)) / std::sqrt(two_pi);
    }
    SpinorField out = f;
    out.rep = target;
    for (std::size_t i = 0; i < nodes; ++i) {
        for (int c = 0; c < 4; ++c) out.values[i][c] = scale * buffer[4 * i + c];
    }
    return out;
}

std::string describe_k(double k, double dk) {
    std::ostringstream os;
    os.precision(12);
    os << k << " (= " << k / dk << " lattice steps of " << dk << ")";
    return os.str();
}

template <typename T>
void put(std::ostream& os, T value) {
    static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    os.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    char bytes[sizeof(T)];
    if (!is.read(bytes, sizeof(T))) throw ValidationError("truncated binary field snapshot");
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

constexpr char magic[4] = {'V', 'S', 'P', 'F'};
constexpr std::uint32_t format_version = 1;

}  // namespace

GridSpec GridSpec::line(double length_z, int points_z) {
    GridSpec g;
    g.dims = 1;
    g.lengths = {0.0, 0.0, length_z};
    g.points = {1, 1, points_z};
    validate(g);
    return g;
}

GridSpec GridSpec::box(const std::array<double, 3>& lengths, const std::array<int, 3>& points) {
    GridSpec g;
    g.dims = 3;
    g.lengths = lengths;
    g.points = points;
    validate(g);
    return g;
}

double GridSpec::dk(int axis) const { return two_pi / lengths[axis]; }

double GridSpec::position_cell() const {
    double c = 1.0;
    for (int a = 0; a < 3; ++a) {
        if (active(a)) c *= spacing(a);
    }
    return c;
}

double GridSpec::momentum_cell() const {
    double c = 1.0;
    for (int a = 0; a < 3; ++a) {
        if (active(a)) c *= dk(a);
    }
    return c;
}

std::array<int, 3> GridSpec::unflatten(std::size_t node) const {
    const int iz = static_cast<int>(node % points[2]);
    const std::size_t rest = node / points[2];
    return {static_cast<int>(rest / points[1]), static_cast<int>(rest % points[1]), iz};
}

std::size_t GridSpec::flatten(const std::array<int, 3>& idx) const {
    return (static_cast<std::size_t>(idx[0]) * points[1] + idx[1]) * points[2] + idx[2];
}

double GridSpec::coordinate(int axis, int index) const {
    return active(axis) ? index * spacing(axis) : 0.0;
}

int GridSpec::signed_index(int axis, int index) const {
    return index < points[axis] / 2 ? index : index - points[axis];
}

double GridSpec::wavenumber(int axis, int index) const {
    return active(axis) ? signed_index(axis, index) * dk(axis) : 0.0;
}

void validate(const GridSpec& grid) {
    if (grid.dims != 1 && grid.dims != 3) throw ValidationError("grid dims must be 1 or 3");
    for (int a = 0; a < 3; ++a) {
        if (!grid.active(a)) {
            if (grid.points[a] != 1) throw ValidationError("inactive grid axis must have one point");
            continue;
        }
        const int n = grid.points[a];
        if (!(grid.lengths[a] > 0.0) || !std::isfinite(grid.lengths[a])) {
            throw ValidationError("grid lengths must be positive and finite");
        }
        if (n < 8 || !std::has_single_bit(static_cast<unsigned>(n))) {
            std::ostringstream os;
            os << "grid points must be a power of two >= 8, got " << n;
            throw ValidationError(os.str());
        }
        if (grid.dims == 3 && n > 64) throw ValidationError("3D grids are limited to 64 points per axis");
    }
}

SpinorField SpinorField::zeros(const GridSpec& grid, Representation rep, double t, double m,
                               std::array<double, 2> transverse) {
    validate(grid);
    SpinorField f;
    f.grid = grid;
    f.rep = rep;
    f.t = t;
    f.m = m;
    f.transverse = grid.dims == 1 ? transverse : std::array<double, 2>{0.0, 0.0};
    f.values.assign(grid.size(), Bispinor::Zero());
    return f;
}

Vec3 SpinorField::momentum(std::size_t node) const {
    const auto idx = grid.unflatten(node);
    if (grid.dims == 1) return {transverse[0], transverse[1], grid.wavenumber(2, idx[2])};
    return {grid.wavenumber(0, idx[0]), grid.wavenumber(1, idx[1]), grid.wavenumber(2, idx[2])};
}

Vec3 SpinorField::position(std::size_t node) const {
    const auto idx = grid.unflatten(node);
    return {grid.coordinate(0, idx[0]), grid.coordinate(1, idx[1]), grid.coordinate(2, idx[2])};
}

double SpinorField::cell() const {
    return rep == Representation::position ? grid.position_cell() : grid.momentum_cell();
}

double SpinorField::norm2() const {
    double s = 0.0;
    for (const auto& v : values) s += v.squaredNorm();
    return s * cell();
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
    return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
    return *this;
}

SpinorField& SpinorField::operator*=(Complex s) {
    for (auto& v : values) v *= s;
    return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(Complex s, SpinorField a) { return a *= s; }

Complex inner_product(const SpinorField& a, const SpinorField& b) {
    require_same_grid(a, b);
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i].dot(b.values[i]);
    return s * a.cell();
}

double max_difference(const SpinorField& a, const SpinorField& b) {
    require_same_grid(a, b);
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, (a.values[i] - b.values[i]).norm());
    return d;
}

SpinorField to_momentum(const SpinorField& f) {
    if (f.rep != Representation::position) throw ValidationError("to_momentum expects a position field");
    return transform(f, Representation::momentum);
}

SpinorField to_position(const SpinorField& f) {
    if (f.rep != Representation::momentum) throw ValidationError("to_position expects a momentum field");
    return transform(f, Representation::position);
}

SpinorField as_momentum(const SpinorField& f) {
    return f.rep == Representation::momentum ? f : to_momentum(f);
}

SpinorField as_position(const SpinorField& f) {
    return f.rep == Representation::position ? f : to_position(f);
}

SpinorField sample_volkov(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m,
                          const GridSpec& grid, double t0) {
    validate(grid);
    validate(field);
    require_on_shell(p, m);
    if (grid.dims != 1) throw ValidationError("Volkov snapshots are sampled on a 1D grid along z");

    const double dk = grid.dk(2);
    const double periods = field.omega / dk;
    const double dressed = p.pz + volkov_quasi_shift(p, field);
    const double steps = dressed / dk;
    auto off_lattice = [](double x) { return std::abs(x - std::round(x)) > 1e-9 * std::max(1.0, std::abs(x)); };
    if (off_lattice(periods) || off_lattice(steps)) {
        throw ValidationError("box is incommensurate with the wave: omega = " + describe_k(field.omega, dk) +
                              ", dressed pz = " + describe_k(dressed, dk));
    }

    const int N = auto_truncation(p, field, m);
    const long long r = std::llround(periods);
    const long long s = std::llround(steps);
    const long long half = grid.points[2] / 2;
    for (int n : {-N, N}) {
        const long long j = s + n * r;
        if (j < -half || j >= half) {
            throw ValidationError("mode n=" + std::to_string(n) + " at k = " + describe_k(j * dk, dk) +
                                  " lies outside the lattice band; increase the number of points");
        }
    }

    SpinorField f = SpinorField::zeros(grid, Representation::position, t0, m, {p.px, p.py});
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        f.values[i] = volkov_eval(p, field, {t0, 0.0, 0.0, f.position(i)[2]}, m);
    }
    return f;
}

SpinorField gaussian_packet(const PacketSpec& spec, const GridSpec& grid, double t0, double m) {
    validate(grid);
    if (!(spec.sigma > 0.0)) throw ValidationError("packet width sigma must be positive");
    const auto& kbar = spec.mean_momentum;
    for (int a = 0; a < 3; ++a) {
        if (!grid.active(a)) continue;
        const double lo = grid.signed_index(a, grid.points[a] / 2) * grid.dk(a);
        const double hi = (grid.points[a] / 2 - 1) * grid.dk(a);
        const double edge = std::min(std::abs(lo - kbar[a]), std::abs(hi - kbar[a]));
        if (std::exp(-edge * edge / (4.0 * spec.sigma * spec.sigma)) >= 1e-12) {
            std::ostringstream os;
            os << "packet spectrum exceeds 1e-12 at the band edge on axis " << a << " (sigma=" << spec.sigma
               << ", band edge |k - kbar|=" << edge << ")";
            throw ValidationError(os.str());
        }
    }
    Vec3 center{};
    if (spec.center) {
        center = *spec.center;
    } else {
        for (int a = 0; a < 3; ++a) center[a] = grid.active(a) ? 0.5 * grid.lengths[a] : 0.0;
    }

    SpinorField f = SpinorField::zeros(grid, Representation::momentum, t0, m, {kbar[0], kbar[1]});
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const Vec3 k = f.momentum(i);
        double d2 = 0.0, phase = 0.0;
        for (int a = 0; a < 3; ++a) {
            if (!grid.active(a)) continue;
            d2 += (k[a] - kbar[a]) * (k[a] - kbar[a]);
            phase += k[a] * center[a];
        }
        const double weight = std::exp(-d2 / (4.0 * spec.sigma * spec.sigma));
        Bispinor spinor;
        if (spec.sign == FrequencySign::positive) {
            spinor = free_spinors(FourMomentum::make_on_shell(k[0], k[1], k[2], m), spec.spin, m).u;
        } else {
            spinor = free_spinors(FourMomentum::make_on_shell(-k[0], -k[1], -k[2], m), spec.spin, m).v;
        }
        f.values[i] = weight * std::exp(-I * phase) * spinor;
    }
    f *= 1.0 / f.norm();
    return f;
}

void write_binary(const SpinorField& f, std::ostream& os) {
    os.write(magic, 4);
    put<std::uint32_t>(os, format_version);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.dims));
    for (double L : f.grid.lengths) put<double>(os, L);
    for (int n : f.grid.points) put<std::uint32_t>(os, static_cast<std::uint32_t>(n));
    put<std::uint32_t>(os, f.rep == Representation::position ? 0u : 1u);
    put<double>(os, f.t);
    put<double>(os, f.m);
    put<double>(os, f.transverse[0]);
    put<double>(os, f.transverse[1]);
    for (const auto& v : f.values) {
        for (int c = 0; c < 4; ++c) {
            put<double>(os, v[c].real());
            put<double>(os, v[c].imag());
        }
    }
}

SpinorField read_binary(std::istream& is) {
    char head[4];
    if (!is.read(head, 4) || std::memcmp(head, magic, 4) != 0) {
        throw ValidationError("not a spinor field snapshot (bad magic)");
    }
    if (get<std::uint32_t>(is) != format_version) throw ValidationError("unsupported snapshot version");
    GridSpec g;
    g.dims = static_cast<int>(get<std::uint32_t>(is));
    for (double& L : g.lengths) L = get<double>(is);
    for (int& n : g.points) n = static_cast<int>(get<std::uint32_t>(is));
    const auto rep = get<std::uint32_t>(is) == 0 ? Representation::position : Representation::momentum;
    const double t = get<double>(is);
    const double m = get<double>(is);
    const double kx = get<double>(is);
    const double ky = get<double>(is);
    SpinorField f = SpinorField::zeros(g, rep, t, m, {kx, ky});
    for (auto& v : f.values) {
        for (int c = 0; c < 4; ++c) {
            const double re = get<double>(is);
            const double im = get<double>(is);
            v[c] = {re, im};
        }
    }
    return f;
}

void write_density_csv(const SpinorField& f, std::ostream& os) {
    const SpinorField pos = as_position(f);
    os << "x,y,z,density\n" << std::setprecision(17);
    for (std::size_t i = 0; i < pos.values.size(); ++i) {
        const Vec3 r = pos.position(i);
        os << r[0] << ',' << r[1] << ',' << r[2] << ',' << pos.values[i].squaredNorm() << '\n';
    }
}

}  // namespace volkov
