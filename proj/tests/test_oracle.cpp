#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wclass/oracle.hpp"
#include "wclass/special_functions.hpp"

using namespace wclass;
using std::numbers::pi;

namespace {

PeriodicSamples sample(int N, double (*f)(double)) {
    PeriodicSamples s{N, std::vector<double>(N)};
    for (int j = 0; j < N; ++j) s.values[j] = f(s.t(j));
    return s;
}

PeriodicSamples indicator(int N, double h) {
    PeriodicSamples s{N, std::vector<double>(N)};
    for (int j = 0; j < N; ++j) s.values[j] = std::fabs(s.t(j)) < h ? 1.0 : 0.0;
    return s;
}

// scan of Σ w |f_j - c| over c
double brute_constant_fit(const PeriodicSamples& s) {
    double best = INFINITY;
    for (int i = -2000; i <= 2000; ++i) {
        const double c = i * 1e-3;
        double v = 0.0;
        for (double f : s.values) v += std::fabs(f - c);
        best = std::min(best, v * 2.0 * pi / s.grid_size);
    }
    return best;
}

}  // namespace

TEST_CASE("kernel synthesis") {
    KernelSpec psi21;
    psi21.sine_coeffs = [](long k) { return 2.0 / (static_cast<double>(k) * k); };
    psi21.decay_C = 2.0;
    psi21.decay_exponent = 2.0;
    const double catalan = 0.91596559417721901505;
    CHECK(std::fabs(eval_kernel(psi21, pi / 2.0, 1e-7) - 2.0 * catalan) <= 1e-6);
    CHECK(std::fabs(psi1_closed_form(0, pi) + 2.0 * std::log(2.0)) <= 1e-15);
    CHECK(std::fabs(psi1_closed_form(1, pi / 2.0) - pi / 2.0) <= 1e-15);

    KernelSpec zero;
    const auto z = synthesize_kernel(zero, 64);
    for (double v : z.values) CHECK(v == 0.0);

    // folded synthesis agrees with pointwise evaluation
    KernelSpec mixed;
    mixed.cosine_coeffs = [](long k) { return std::pow(0.8, static_cast<double>(k)); };
    mixed.sine_coeffs = [](long k) { return 1.0 / std::pow(static_cast<double>(k), 3.0); };
    mixed.decay_C = 2.0;
    mixed.decay_exponent = 3.0;
    const auto s = synthesize_kernel(mixed, 128, 1e-10);
    for (int j : {0, 17, 64, 100})
        CHECK(std::fabs(s.values[j] - eval_kernel(mixed, s.t(j), 1e-10)) <= 3e-10);

    KernelSpec slow;
    slow.cosine_coeffs = [](long k) { return 1.0 / k; };
    slow.decay_C = 1.0;
    slow.decay_exponent = 1.0;
    CHECK_THROWS_AS(synthesize_kernel(slow, 64), slow_decay_error);
    CHECK_THROWS(synthesize_kernel(zero, 100));
}

TEST_CASE("operator kernel coefficients") {
    const auto spec = operator_kernel({2.0, 1, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{});
    CHECK(spec.cosine_coeffs(3) == 0.0);
    CHECK(spec.sine_coeffs(3) == doctest::Approx(2.0 * (1.0 - std::exp(-1.5)) / 9.0));
    const auto even = operator_kernel({2.0, 2, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{});
    CHECK(even.cosine_coeffs(2) == doctest::Approx(-2.0 * (1.0 - std::exp(-1.0)) / 4.0));
    const auto r1 = operator_kernel({1.0, 1, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{});
    REQUIRE(r1.closed_form_beta.has_value());
    // closed form plus remainder reproduces the coefficient series away from 0
    const double t = 1.1;
    double direct = 0.0;
    for (long k = 200000; k >= 1; --k) direct += 2.0 * (1.0 - std::exp(-0.5 * k)) / k * std::sin(k * t);
    CHECK(std::fabs(eval_kernel(r1, t, 1e-12) - direct) <= 1e-4);
    CHECK_THROWS_AS(operator_kernel({0.8, 1, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{}), slow_decay_error);
}

TEST_CASE("l1 best approximation") {
    const auto c = sample(1024, [](double t) { return std::cos(3.0 * t) - 0.5 * std::sin(t) + 0.2; });
    CHECK(l1_best_approx(c, 4).value <= 1e-10);

    const auto e1 = l1_best_approx(indicator(4096, pi / 8.0), 1);
    CHECK(std::fabs(e1.value - pi / 4.0) <= 2e-3);
    const auto e2 = l1_best_approx(indicator(8192, pi / 8.0), 1);
    const double ratio = (e2.value - pi / 4.0) / (e1.value - pi / 4.0);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.05));

    const auto cs = sample(512, [](double t) { return std::cos(t); });
    const double lp = l1_best_approx(cs, 1).value;
    CHECK(std::fabs(lp - 4.0) <= 2e-3);
    CHECK(std::fabs(lp - brute_constant_fit(cs)) <= 1e-9);

    // invariance under adding a polynomial of degree < n
    auto f = sample(2048, [](double t) { return std::fabs(std::sin(2.5 * t)) + 0.3 * std::cos(5.0 * t); });
    const double before = l1_best_approx(f, 3).value;
    for (int j = 0; j < f.grid_size; ++j) f.values[j] += 1.7 - std::cos(2.0 * f.t(j)) + 0.4 * std::sin(f.t(j));
    CHECK(std::fabs(l1_best_approx(f, 3).value - before) <= 1e-10);
    CHECK_THROWS(l1_best_approx(f, 600));
}

TEST_CASE("sign conditions and extremal values") {
    const auto abel = synthesize_kernel(operator_kernel({1.0, 1, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{}), 8192);
    CHECK(sign_condition_check(abel, 1, SignMode::sine, {0.0}).min_value >= -1e-9);

    const auto sin2 = sample(1024, [](double t) { return std::sin(2.0 * t); });
    CHECK_FALSE(sign_condition_check(sin2, 1, SignMode::sine, {0.0}).pass);
    CHECK_THROWS(extremal_value(sin2, 1, SignMode::sine, {0.0}));

    const auto poisson = synthesize_kernel(operator_kernel({2.0, 0, 1}, {1.0, 0.5, 0.0, 1.0}, Exp{}), 4096);
    CHECK(sign_condition_check(poisson, 1, SignMode::cosine, {cosine_t_star(poisson, 1)}).pass);

    PeriodicSamples zero{256, std::vector<double>(256, 0.0)};
    CHECK(extremal_value(zero, 1, SignMode::cosine, {0.0}) == 0.0);
    const auto ind = indicator(4096, pi / 8.0);
    CHECK(std::fabs(extremal_value(ind, 1, SignMode::cosine, {0.0}) - (pi / 4.0) / (2.0 * pi)) <= 1e-3);
}

TEST_CASE("three-way agreement on a small matrix") {
    for (int beta : {0, 1}) {
        for (double delta : {0.3, 1.0}) {
            const ClassParams c{2.0, beta, 1};
            const OperatorParams op{1.0, delta, 0.0, 1.0};
            const auto series = approx_value(c, op, Exp{}).value;
            const auto K = synthesize_kernel(operator_kernel(c, op, Exp{}, 1.0 / (2.0 * pi)), 4096);
            const SignMode mode = beta ? SignMode::sine : SignMode::cosine;
            const std::vector<double> T{beta ? 0.0 : cosine_t_star(K, 1)};
            CHECK(std::fabs(series - 2.0 * pi * extremal_value(K, 1, mode, T)) <= 5e-4);
            CHECK(std::fabs(series - l1_best_approx(K, 1).value) <= 5e-3);
        }
    }
    // n = 2: T* taken from the L1 fit, sign pattern sign(sin 2t)
    const ClassParams c{2.0, 1, 2};
    const OperatorParams op{1.0, 0.4, 0.0, 1.0};
    const auto K = synthesize_kernel(operator_kernel(c, op, InversePower{2.0}, 1.0 / (2.0 * pi)), 4096);
    const auto series = approx_value(c, op, InversePower{2.0}).value;
    const auto fit = l1_best_approx(K, 2);
    CHECK(std::fabs(series - fit.value) <= 5e-3);
    CHECK(sign_condition_check(K, 2, SignMode::sine, fit.poly_coeffs).pass);
    CHECK(std::fabs(series - 2.0 * pi * extremal_value(K, 2, SignMode::sine, fit.poly_coeffs)) <= 5e-4);
}

TEST_CASE("positivity") {
    CHECK(positivity_check([](long k) { return std::pow(0.7, static_cast<double>(k)); }, 1024, 200).pass);
    CHECK(positivity_check([](long k) { return cesaro_number(6 - k, 1.0) / cesaro_number(6, 1.0); }, 1024, 7).pass);
    const auto bad = positivity_check([](long k) { return k == 1 ? 2.0 : 0.0; }, 1024, 2);
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_value == doctest::Approx(-1.0));
}
