#include "volkov/mode_expansion.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "volkov/parallel.hpp"
#include "volkov/volkov_solution.hpp"

namespace volkov {

namespace {

constexpr Complex I{0.0, 1.0};

void validate_inputs(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m, int N) {
    validate(field);
    if (field.envelope) throw ValidationError("mode expansion requires the infinite wave (no envelope)");
    require_on_shell(p, m);
    if (N < 0 || N > max_truncation) {
        std::ostringstream os;
        os << "truncation N=" << N << " outside [0, " << max_truncation << "]";
        throw ValidationError(os.str());
    }
}

ModeTable empty_table(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m, int N) {
    ModeTable t;
    t.p = p;
    t.field = field;
    t.m = m;
    t.N = N;
    t.quasi_shift = volkov_quasi_shift(p, field);
    t.entries.resize(static_cast<std::size_t>(2 * N + 1));
    for (int n = -N; n <= N; ++n) {
        auto& e = t.entries[static_cast<std::size_t>(n + N)];
        e.n = n;
        e.q = FourMomentum::make_off_shell(p.E + n * field.omega, p.px, p.py, p.pz + n * field.omega);
        e.q.on_shell = (n == 0);
    }
    return t;
}

std::vector<Bispinor> sample_periodic_factor(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                                             double m, int M) {
    std::vector<Bispinor> samples(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        samples[static_cast<std::size_t>(j)] =
            volkov_periodic_factor(p, field, 2.0 * std::numbers::pi * j / M, m);
    }
    return samples;
}

Bispinor trapezoid_coefficient(const std::vector<Bispinor>& samples, int n) {
    const int M = static_cast<int>(samples.size());
    Bispinor acc = Bispinor::Zero();
    for (int j = 0; j < M; ++j) {
        // n*j mod M keeps the phase argument small and exact.
        const long long r = (static_cast<long long>(n) * j) % M;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / M;
        acc += std::exp(I * angle) * samples[static_cast<std::size_t>(j)];
    }
    return acc / static_cast<double>(M);
}

void check_tail(ModeTable& t, double tail_tol, const char* method) {
    if (!(t.tail_norm <= tail_tol)) {
        std::ostringstream os;
        os << method << ": tail criterion violated at N=" << t.N << ", first omitted order has norm "
           << std::scientific << t.tail_norm << " > " << tail_tol;
        throw NumericalError(os.str());
    }
}

}  // namespace

FourMomentum ModeTable::quasi_momentum(int n) const {
    const auto& q = at(n).q;
    return FourMomentum::make_off_shell(q.E + quasi_shift, q.px, q.py, q.pz + quasi_shift);
}

Bispinor ModeTable::reconstruct(const SpacetimePoint& X) const {
    Bispinor sum = Bispinor::Zero();
    for (const auto& e : entries) {
        const FourMomentum q = quasi_momentum(e.n);
        const double q_dot_x = q.E * X.t - q.px * X.x - q.py * X.y - q.pz * X.z;
        sum += std::exp(-I * q_dot_x) * e.w;
    }
    return sum;
}

double ModeTable::total_norm2() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.w.squaredNorm();
    return s;
}

int auto_truncation(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m, double tail_tol) {
    validate_inputs(p, field, m, 0);
    for (int M = 256; M <= 8 * 4 * max_truncation; M *= 4) {
        const auto samples = sample_periodic_factor(p, field, m, M);
        const int reach = M / 4;
        std::vector<double> norms(static_cast<std::size_t>(2 * reach + 1));
        parallel_for(norms.size(), [&](std::size_t i) {
            norms[i] = trapezoid_coefficient(samples, static_cast<int>(i) - reach).norm();
        });
        int N = reach;
        while (N > 0 && norms[static_cast<std::size_t>(reach + N)] < tail_tol &&
               norms[static_cast<std::size_t>(reach - N)] < tail_tol) {
            --N;
        }
        if (N < reach / 2) {
            if (N > max_truncation) break;
            return N;
        }
    }
    std::ostringstream os;
    os << "tail criterion " << tail_tol << " not met below N=" << max_truncation;
    throw NumericalError(os.str());
}

ModeTable mode_coefficients_quadrature(const FourMomentum& p, const PlaneWaveFieldSpec& field,
                                       double m, int N, int quad_points, double tail_tol) {
    validate_inputs(p, field, m, N);
    if (quad_points == 0) quad_points = std::max(64, 16 * N);
    if (quad_points < 8 * N || quad_points < 2 * N + 3) {
        std::ostringstream os;
        os << "quadrature needs at least 8N points, got " << quad_points << " for N=" << N;
        throw ValidationError(os.str());
    }
    ModeTable t = empty_table(p, field, m, N);
    const auto samples = sample_periodic_factor(p, field, m, quad_points);
    parallel_for(t.entries.size(), [&](std::size_t i) {
        t.entries[i].w = trapezoid_coefficient(samples, t.entries[i].n);
    });
    t.tail_norm = std::max(trapezoid_coefficient(samples, N + 1).norm(),
                           trapezoid_coefficient(samples, -N - 1).norm());
    check_tail(t, tail_tol, "quadrature");
    return t;
}

double bessel_j(int n, double x) {
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

double generalized_bessel(int n, double a, double b) {
    if (b == 0.0) return bessel_j(n, a);
    // J_k(b) ~ (|b|/2)^k / k! beyond k ~ |b|; stop once the factor is negligible.
    double sum = bessel_j(n, a) * bessel_j(0, b);
    constexpr int k_cap = 400;
    for (int k = 1; k <= k_cap; ++k) {
        const double jk = bessel_j(k, b);
        const double jmk = bessel_j(-k, b);
        const double term = bessel_j(n - 2 * k, a) * jk + bessel_j(n + 2 * k, a) * jmk;
        sum += term;
        if (k > std::abs(b) + 2 && std::abs(jk) < 1e-18) return sum;
    }
    std::ostringstream os;
    os << "generalized Bessel sum did not converge for n=" << n << ", a=" << a << ", b=" << b;
    throw NumericalError(os.str());
}

std::pair<double, double> volkov_bessel_arguments(const FourMomentum& p, const PlaneWaveFieldSpec& field) {
    const double denom = field.omega * (p.E - p.pz);
    return {field.A * p.px / denom, -field.A * field.A / (8.0 * denom)};
}

ModeTable mode_coefficients_bessel(const FourMomentum& p, const PlaneWaveFieldSpec& field, double m,
                                   int N, double tail_tol) {
    validate_inputs(p, field, m, N);
    ModeTable t = empty_table(p, field, m, N);
    const auto [u1, u2] = volkov_spinors(p, m);
    const auto [a, b] = volkov_bessel_arguments(p, field);
    const double A = field.A;

    // F = sum_m G_m e^{i m phi} (u1 - A cos(phi) u2); the coefficient of
    // e^{-i n phi} is G_(-n) u1 - (A/2) (G_(-n-1) + G_(-n+1)) u2.
    auto coefficient = [&](int n) -> Bispinor {
        const double g0 = generalized_bessel(-n, a, b);
        const double gm = generalized_bessel(-n - 1, a, b);
        const double gp = generalized_bessel(-n + 1, a, b);
        return g0 * u1 - 0.5 * A * (gm + gp) * u2;
    };
    parallel_for(t.entries.size(), [&](std::size_t i) { t.entries[i].w = coefficient(t.entries[i].n); });
    t.tail_norm = std::max(coefficient(N + 1).norm(), coefficient(-N - 1).norm());
    check_tail(t, tail_tol, "generalized Bessel");
    return t;
}

NegativeEnergyContent negative_energy_content(const ModeTable& table) {
    if (table.entries.empty()) throw ValidationError("empty mode table");
    double total = 0.0, by_sign = 0.0, by_projector = 0.0;
    for (const auto& e : table.entries) {
        const double w2 = e.w.squaredNorm();
        total += w2;
        if (e.q.E < 0.0) by_sign += w2;
        const FourMomentum k = table.quasi_momentum(e.n);
        const auto proj = energy_projectors(k.spatial(), table.m);
        by_projector += (proj.minus * e.w).squaredNorm();
    }
    if (!(total > 0.0)) throw ValidationError("mode table has zero norm");
    return {by_sign / total, by_projector / total};
}

void write_csv(const ModeTable& table, std::ostream& os) {
    os << "n,q0,q1,q2,q3";
    for (int c = 0; c < 4; ++c) os << ",re" << c << ",im" << c;
    os << ",norm2\n";
    os << std::setprecision(17);
    for (const auto& e : table.entries) {
        os << e.n << ',' << e.q.E << ',' << e.q.px << ',' << e.q.py << ',' << e.q.pz;
        for (int c = 0; c < 4; ++c) os << ',' << e.w[c].real() << ',' << e.w[c].imag();
        os << ',' << e.w.squaredNorm() << '\n';
    }
}

}  // namespace volkov
