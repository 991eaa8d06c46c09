#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wclass/series_engine.hpp"
#include "wclass/special_functions.hpp"

using namespace wclass;
using std::numbers::pi;

namespace {

// direct sum of the bracket series over odd j up to J, no tail
double brute_value(double r, int beta, int n, double alpha, double delta, double gamma,
                   double (*h)(double), long J = 4000001) {
    double s = 0.0;
    for (long j = J; j >= 1; j -= 2) {
        const long k = (j - 1) / 2;
        const double x = std::pow(static_cast<double>(j) * n, alpha) * delta;
        const double sign = beta % 2 == 0 && k % 2 ? -1.0 : 1.0;
        s += sign * (1.0 - (1.0 + gamma * x) * h(x)) / std::pow(static_cast<double>(j), r + 1);
    }
    return 4.0 / (pi * std::pow(n, r)) * s;
}

double odd_cube_sum() {
    double s = 0.0;
    for (long j = 2000001; j >= 1; j -= 2) s += 1.0 / (static_cast<double>(j) * j * j);
    return s;
}

double h_exp(double x) { return std::exp(-x); }
double h_inv2(double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }

}  // namespace

TEST_CASE("sine and cosine coefficient sums") {
    auto zero = [](long) { return 0.0; };
    CHECK(en_from_sine_coeffs(zero, 1, 1e-12, power_tail(0.0, 2.0, 1)).value == 0.0);
    CHECK(en_from_cosine_coeffs(zero, 1, 1e-12, power_tail(0.0, 2.0, 1)).value == 0.0);

    const double q = 0.5;
    auto geo = [q](long k) { return std::pow(q, static_cast<double>(k)); };
    auto geo_tail = [q](long K) { return std::pow(q, 2.0 * K + 1) / (1.0 - q * q); };
    double brute = 0.0;
    for (int k = 200; k >= 0; --k) brute += std::pow(q, 2 * k + 1) / (2 * k + 1);
    const auto s = en_from_sine_coeffs(geo, 1, 1e-14, geo_tail);
    CHECK(std::fabs(s.value - 2.0 / pi * brute) <= 1e-14);
    CHECK(std::fabs(s.value - 2.0 / pi * std::atanh(q)) <= 1e-14);
    const auto c = en_from_cosine_coeffs(geo, 1, 1e-14, geo_tail);
    CHECK(std::fabs(c.value - 2.0 / pi * std::atan(q)) <= 1e-14);

    auto inv_sq = [](long k) { return 2.0 / (static_cast<double>(k) * k); };
    const auto s2 = en_from_sine_coeffs(inv_sq, 1, 1e-7, power_tail(2.0, 2.0, 1));
    CHECK(std::fabs(s2.value - 4.0 / pi * odd_cube_sum()) <= 1e-7);
    CHECK(std::fabs(s2.value - 4.0 / pi * std::pow(2.0, -3) * hurwitz_zeta(3.0, 0.5)) <= 1e-7);
    const auto c2 = en_from_cosine_coeffs(inv_sq, 1, 1e-12, power_tail(2.0, 2.0, 1), true);
    CHECK(std::fabs(c2.value - pi * pi / 8.0) <= 1e-12);
    CHECK(c2.tail_bound <= 1e-12);

    auto harmonic = [](long) { return 1.0; };
    CHECK_THROWS_AS(en_from_sine_coeffs(harmonic, 1, 1e-12, [](long) { return INFINITY; }),
                    divergence_error);
}

TEST_CASE("approx_value reference points") {
    auto r1 = approx_value({1.0, 1, 1}, {1.0, 50.0, 0.0, 1.0}, Exp{});
    CHECK(std::fabs(r1.value - pi / 2.0) <= 1e-15);
    CHECK(r1.justification == "thZast1-case1");

    auto r2 = approx_value({2.0, 1, 1}, {1.0, 1.0, 0.0, 1.0}, RieszCutoff{1.0});
    CHECK(std::fabs(r2.value - 4.0 / pi * odd_cube_sum()) <= 1e-12);
    CHECK(r2.terms_used == 1);
}

TEST_CASE("approx_value against direct summation") {
    struct Case {
        double r;
        int beta, n;
        double alpha, delta, gamma;
        bool exp;
    };
    const Case cases[] = {
        {1.0, 1, 1, 1.0, 0.1, 0.0, true},  {2.0, 0, 1, 0.5, 0.3, 0.0, true},
        {1.5, 1, 2, 0.7, 0.2, 0.5, true},  {2.0, 2, 1, 1.0, 0.1, -0.5, true},
        {2.5, 1, 3, 1.3, 0.05, 0.0, false}, {3.0, 0, 1, 2.0, 0.4, 1.5, false},
    };
    for (const auto& c : cases) {
        CAPTURE(c.r);
        CAPTURE(c.beta);
        CAPTURE(c.n);
        const MultiplierFamily f = c.exp ? MultiplierFamily{Exp{}} : MultiplierFamily{InversePower{2.0}};
        const auto res = approx_value({c.r, c.beta, c.n}, {c.alpha, c.delta, c.gamma, 1.0}, f, 1e-12);
        const double brute = brute_value(c.r, c.beta, c.n, c.alpha, c.delta, c.gamma, c.exp ? h_exp : h_inv2);
        // brute force truncation after j = 4e6 is below 4/(π r (4e6)^r)
        CHECK(std::fabs(res.value - brute) <= 4.0 / (pi * c.r * std::pow(4e6, c.r)) + 1e-12);
        CHECK(res.tail_bound <= 1e-12);
    }
}

TEST_CASE("tail bound covers the tighter recomputation") {
    for (double delta : {0.01, 0.3, 2.0}) {
        const ClassParams c{1.2, 1, 1};
        const OperatorParams op{0.8, delta, 0.0, 1.0};
        const auto coarse = approx_value(c, op, InversePower{1.5}, 1e-6);
        const auto fine = approx_value(c, op, InversePower{1.5}, 1e-7);
        CHECK(std::fabs(coarse.value - fine.value) <= coarse.tail_bound);
    }
}

TEST_CASE("gamma zero path equals plain path") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const ClassParams c{0.5 + 3.0 * u(rng), static_cast<int>(u(rng) * 4), 1 + static_cast<int>(u(rng) * 3)};
        const OperatorParams op{0.3 + 1.5 * u(rng), 0.05 + 2.0 * u(rng), 0.0, 1.0};
        const MultiplierFamily f = i % 2 ? MultiplierFamily{Exp{}} : MultiplierFamily{InversePower{1.0 + u(rng)}};
        CHECK(std::fabs(approx_value(c, op, f).value - approx_value_plain(c, op, f).value) <= 1e-15);
    }
}

TEST_CASE("structural properties") {
    // n scaling
    const double r = 1.5, alpha = 0.7, delta = 0.3;
    const auto v2 = approx_value({r, 1, 2}, {alpha, delta, 0.0, 1.0}, Exp{}, 1e-14).value;
    const auto v1 = approx_value({r, 1, 1}, {alpha, delta * std::pow(2.0, alpha), 0.0, 1.0}, Exp{}, 1e-14).value;
    CHECK(std::fabs(v2 - std::pow(2.0, -r) * v1) <= 1e-14);
    // even below odd, monotone in δ
    double prev = 0.0;
    for (double d : {0.01, 0.05, 0.2, 1.0, 5.0}) {
        const auto odd = approx_value({2.0, 1, 1}, {1.0, d, 0.0, 1.0}, Exp{}).value;
        const auto even = approx_value({2.0, 0, 1}, {1.0, d, 0.0, 1.0}, Exp{}).value;
        CHECK(even <= odd);
        CHECK(odd > prev);
        prev = odd;
    }
    // p plays no role
    CHECK(approx_value({2.0, 1, 1, Norm::one}, {1.0, 0.3, 0.0, 1.0}, Exp{}).value ==
          approx_value({2.0, 1, 1, Norm::infinity}, {1.0, 0.3, 0.0, 1.0}, Exp{}).value);
}

TEST_CASE("applicability tags") {
    CHECK(check_applicability({0.5, 1, 4}, {0.5, 1.0, 0.0, 1.0}, Exp{}) == "thZast1-case1");
    CHECK(check_applicability({1.0, 0, 2}, {1.0, 1.0, 0.0, 1.0}, Exp{}) == "thZast1-case2-strong");
    CHECK(check_applicability({1.0, 0, 1}, {1.0, 1.0, 0.0, 1.0}, RieszCutoff{0.5}) == "unverified");
    // α > 1 needs r >= α m(h) + 1
    CHECK(check_applicability({2.5, 1, 1}, {1.5, 1.0, 0.0, 1.0}, Exp{}) == "thZast-case1");
    CHECK(check_applicability({3.5, 0, 1}, {1.5, 1.0, 0.0, 1.0}, InversePower{2.0}) == "thZast-case2");
    // γ ≠ 0 routes to thZast3 or thZast4
    CHECK(check_applicability({1.0, 1, 3}, {1.0, 1.0, 0.2, 1.0}, Exp{}) == "thZast3-1i");
    CHECK(check_applicability({4.5, 1, 1}, {1.5, 1.0, 0.5, 2.0}, Exp{}) == "thZast3-1ii");
    CHECK(check_applicability({3.5, 1, 1}, {1.5, 1.0, 0.5, 2.0}, Exp{}) == "unverified");
    CHECK(check_applicability({2.0, 0, 1}, {1.0, 1.0, 0.9, 1.0}, Exp{}) == "thZast4");
    CHECK(check_applicability({2.0, 0, 1}, {1.0, 1.0, 1.2, 1.0}, Exp{}) == "unverified");
    CHECK(check_applicability({2.0, 0, 3}, {1.0, 1.0, 0.25, 1.0}, RieszCutoff{4.0}) == "thZast3-strong");
    CHECK(check_applicability({2.0, 0, 1}, {1.0, 1.0, 1.0, 1.0}, InversePower{2.0}) == "thZast3-strong");
    CHECK(check_applicability({2.0, 0, 1}, {1.0, 1.0, 1.3, 1.0}, InversePower{2.0}) == "thZast3-2i");
    // sampled families are never certified
    CHECK(check_applicability({2.0, 1, 1}, {1.0, 1.0, 0.0, 1.0}, Sampled{{0.0, 1.0}, {1.0, 0.0}}) == "unverified");
    const auto unv = approx_value({2.0, 0, 1}, {1.0, 1.0, 1.2, 1.0}, Exp{});
    CHECK(unv.justification == "unverified");
    CHECK_FALSE(unv.warnings.empty());
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(approx_value({0.0, 1, 1}, {1.0, 1.0, 0.0, 1.0}, Exp{}), std::domain_error);
    CHECK_THROWS_AS(approx_value({1.0, 1, 1}, {1.0, -1.0, 0.0, 1.0}, Exp{}), std::domain_error);
    CHECK_THROWS_AS(approx_value({1.0, 1, 1}, {1.0, 1.0, 0.0, 0.5}, Exp{}), std::domain_error);
    CHECK_THROWS_AS(approx_value({1.0, 1, 1}, {1.0, 0.1, 1.0, 1.0}, InversePower{0.5}), divergence_error);
}

TEST_CASE("cesaro values") {
    const double zeta_part = 4.0 / pi * odd_cube_sum();
    const auto m0 = cesaro_value({2.0, 1, 1}, 0, 1.0);
    CHECK(std::fabs(m0.value - zeta_part) <= 1e-12);
    CHECK(m0.justification == "thChezaro-1");
    const auto m1 = cesaro_value({2.0, 1, 1}, 1, 1.0);
    CHECK(std::fabs(m1.value - (zeta_part - 4.0 / pi * 0.5)) <= 1e-12);
    // brute force bracket for m = 9, α = 2.5, β even
    const long m = 9;
    const double a = 2.5;
    double s = 0.0;
    for (long j = 2000001; j >= 1; j -= 2) {
        const long k = (j - 1) / 2;
        const double bracket = 1.0 - cesaro_number(m - j, a) / cesaro_number(m, a);
        s += (k % 2 ? -1.0 : 1.0) * bracket / std::pow(static_cast<double>(j), 4.0);
    }
    const auto v = cesaro_value({3.0, 0, 1}, m, a);
    CHECK(std::fabs(v.value - 4.0 / pi * s) <= 1e-14);
    CHECK(v.justification == "thChezaro-2");
    CHECK(cesaro_value({2.5, 0, 1}, 3, 1.0).justification == "unverified");
    CHECK(cesaro_value({1.5, 1, 1}, 3, 1.0).justification == "unverified");
    CHECK_THROWS(cesaro_value({2.0, 1, 2}, 3, 1.0));
    CHECK_THROWS(cesaro_value({2.0, 1, 1}, 3, 0.5));
}

TEST_CASE("cesaro mixing identity") {
    const ClassParams c{2.0, 1, 1};
    const auto ex = cesaro_mixing_identity(c, 5, 2.0, 1.0);
    CHECK(std::fabs(ex.lhs - ex.rhs) <= 1e-10);
    const auto same = cesaro_mixing_identity(c, 7, 2.0, 2.0);
    CHECK(std::fabs(same.lhs - same.rhs) <= 1e-15);
    const auto zero = cesaro_mixing_identity(c, 0, 3.0, 1.0);
    CHECK(std::fabs(zero.lhs - zero.rhs) <= 1e-15);
    for (double a : {1.0, 2.0, 3.5})
        for (double g : {1.0, 2.0, 3.5})
            for (long m = 0; m <= 20; ++m) {
                const auto sides = cesaro_mixing_identity({3.0, 0, 1}, m, a, g);
                CHECK(std::fabs(sides.lhs - sides.rhs) <= 1e-9);
            }
}

TEST_CASE("q means") {
    const double zeta_part = 4.0 / pi * odd_cube_sum();
    const std::vector<std::pair<double, double>> lin{{1.0, 1.0}};
    CHECK(std::fabs(q_means_value({2.0, 1, 1}, lin, 1.0, QForm::u, 1.0).value - zeta_part) <= 1e-12);
    const auto u4 = q_means_value({2.0, 1, 1}, lin, 1.0, QForm::u, 4.0);
    const double expect = zeta_part - 4.0 / pi * (3.0 / 4.0 + (1.0 / 4.0) / 27.0);
    CHECK(std::fabs(u4.value - expect) <= 1e-12);
    CHECK(u4.justification == "thPolinom-1");
    const std::vector<std::pair<double, double>> sq{{1.0, 2.0}};
    const auto uf = q_means_value({2.0, 0, 1}, sq, 0.8, QForm::u, 6.0);
    const auto df = q_means_value({2.0, 0, 1}, sq, 0.8, QForm::unit, 1.0 / 6.0);
    CHECK(std::fabs(uf.value - df.value) <= 1e-14);
    CHECK(uf.justification == "thPolinom-2");
    CHECK(q_means_value({2.5, 0, 1}, sq, 0.8, QForm::u, 6.0).justification == "unverified");
    CHECK(q_means_value({2.0, 0, 1}, sq, 1.5, QForm::u, 6.0).justification == "unverified");
}

TEST_CASE("fejer constant") {
    CHECK(std::fabs(fejer_constant(2.0, 1) - pi / 2.0) <= 1e-12);
    CHECK(std::fabs(fejer_constant(1.0, 0) - 1.0) <= 1e-12);
    double s = 0.0;
    for (long j = 2000001; j >= 1; j -= 2) s += 1.0 / (static_cast<double>(j) * j);
    CHECK(std::fabs(fejer_constant(2.0, 1) - 4.0 / pi * s) <= 1e-6);
    CHECK_THROWS_AS(fejer_constant(1.0, 1), divergence_error);
}
