#include "wclass/special_functions.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace wclass {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> bernoulli_even = {
    1.0 / 6.0,           -1.0 / 30.0,        1.0 / 42.0,
    -1.0 / 30.0,         5.0 / 66.0,         -691.0 / 2730.0,
    7.0 / 6.0,           -3617.0 / 510.0,    43867.0 / 798.0,
    -174611.0 / 330.0,   854513.0 / 138.0,   -236364091.0 / 2730.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double sin_pi(double x) {
    double r = std::remainder(x, 2.0);
    if (r == 0.0 || std::fabs(r) == 1.0) return 0.0;
    if (r > 0.5) return std::sin(pi * (1.0 - r));
    if (r < -0.5) return -std::sin(pi * (1.0 + r));
    return std::sin(pi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double euler_maclaurin(double s, double a) {
    const int N = s < 0.0 ? 6 : 10 + static_cast<int>(std::ceil(s));
    double head = 0.0;
    for (int k = 0; k < N; ++k) head += std::pow(k + a, -s);
    const double x = N + a;
    double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double rising = s;          // (s)_{2j-1}
    double xp = std::pow(x, -s - 1.0);
    double fact = 2.0;          // (2j)!
    for (int j = 1; j <= 12; ++j) {
        tail += bernoulli_even[j - 1] / fact * rising * xp;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        xp /= x * x;
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
    }
    return head + tail;
}

// Li_σ(e^{iθ}) for integer σ = m, 0 < |θ| <= π.
cplx polylog_unit_int(int m, double theta) {
    const cplx mu(0.0, theta);
    double harmonic = 0.0;
    for (int k = 1; k < m; ++k) harmonic += 1.0 / k;
    cplx sum(0.0, 0.0);
    cplx p(1.0, 0.0);
    int small = 0;
    for (int j = 0; j < 400; ++j) {
        cplx term;
        if (j == m - 1)
            term = p * (harmonic - std::log(-mu));
        else
            term = riemann_zeta(static_cast<double>(m - j)) * p;
        sum += term;
        if (j > m && std::abs(term) < 1e-18 * std::abs(sum)) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
        p *= mu / static_cast<double>(j + 1);
    }
    return sum;
}

cplx polylog_unit_frac(double sigma, double theta) {
    const cplx mu(0.0, theta);
    cplx sum = gamma_fn(1.0 - sigma) * std::pow(-mu, sigma - 1.0);
    cplx p(1.0, 0.0);
    int small = 0;
    for (int j = 0; j < 400; ++j) {
        cplx term = riemann_zeta(sigma - j) * p;
        sum += term;
        if (j > sigma && std::abs(term) < 1e-18 * std::abs(sum)) {
            if (++small >= 3) break;
        } else {
            small = 0;
        }
        p *= mu / static_cast<double>(j + 1);
    }
    return sum;
}

// Σ_{k>=1} e^{2πika} / k^σ for σ > 1, a in (0,1).
cplx periodic_zeta(double sigma, double a) {
    const double theta = 2.0 * pi * (a <= 0.5 ? a : a - 1.0);
    const double m = std::round(sigma);
    const double d = sigma - m;
    if (d == 0.0) return polylog_unit_int(static_cast<int>(m), theta);
    if (std::fabs(d) >= 1e-3) return polylog_unit_frac(sigma, theta);
    // near an integer the two singular terms cancel; interpolate instead
    constexpr double h = 2e-3;
    const std::array<double, 5> nodes = {-2 * h, -h, 0.0, h, 2 * h};
    cplx result(0.0, 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        cplx fi = nodes[i] == 0.0 ? polylog_unit_int(static_cast<int>(m), theta)
                                  : polylog_unit_frac(m + nodes[i], theta);
        double w = 1.0;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != i) w *= (d - nodes[j]) / (nodes[i] - nodes[j]);
        result += w * fi;
    }
    return result;
}

double hurwitz_reflected(double s, double a) {
    if (a == 1.0) return riemann_zeta(s);
    if (a == 0.5) return (std::pow(2.0, s) - 1.0) * riemann_zeta(s);
    const double sigma = 1.0 - s;
    const cplx F = periodic_zeta(sigma, a);
    const double scale = 2.0 * std::exp(std::lgamma(sigma) - sigma * std::log(2.0 * pi));
    return scale * (sin_pi(s / 2.0) * F.real() + cos_pi(s / 2.0) * F.imag());
}

double alternating_cvz(double s, double a) {
    constexpr int n = 32;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d, sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * std::pow(k + a, -s);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    return sum / d;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("gamma: pole at non-positive integer");
    return std::tgamma(x);
}

double log_gamma(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("log_gamma: pole at non-positive integer");
    return std::lgamma(x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw pole_error("digamma: pole at non-positive integer");
    if (x < 0.0) return digamma(1.0 - x) - pi * cos_pi(x) / sin_pi(x);
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double p = inv2, series = 0.0;
    for (int j = 1; j <= 8; ++j) {
        series += bernoulli_even[j - 1] / (2.0 * j) * p;
        p *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

double riemann_zeta(double s) {
    if (s == 1.0) throw pole_error("zeta: pole at s = 1");
    if (s >= -0.5) return euler_maclaurin(s, 1.0);
    const double t = 1.0 - s;
    const double sp = sin_pi(s / 2.0);
    if (sp == 0.0) return 0.0;
    const double mag = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi) + std::lgamma(t));
    return mag * sp * euler_maclaurin(t, 1.0);
}

double hurwitz_zeta(double s, double a) {
    if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: a must be positive");
    if (s == 1.0) throw pole_error("hurwitz_zeta: pole at s = 1");
    if (s >= -0.5) return euler_maclaurin(s, a);
    double a0 = a - std::ceil(a) + 1.0;
    double shift = 0.0;
    for (double x = a0; x < a - 0.5; x += 1.0) shift += std::pow(x, -s);
    return hurwitz_reflected(s, a0) - shift;
}

double hurwitz_zeta_alternating(double s, double a) {
    if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta_alternating: a must be positive");
    if (s > 0.0) return alternating_cvz(s, a);
    return std::pow(2.0, -s) * (hurwitz_zeta(s, a / 2.0) - hurwitz_zeta(s, (a + 1.0) / 2.0));
}

double cesaro_number(long n, double alpha) {
    if (n < 0) return 0.0;
    double v = 1.0;
    for (long k = 1; k <= n; ++k) v *= (alpha + k) / k;
    return v;
}

}  // namespace wclass
