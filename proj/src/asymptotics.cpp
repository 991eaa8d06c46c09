#include "wclass/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wclass/special_functions.hpp"

namespace wclass {

namespace {

constexpr double pi = std::numbers::pi;

// log of the k-th integer-power weight: Γ(μ+k)/Γ(μ) for the inverse power family, 1 for Abel
using LogWeight = double (*)(double mu, int k);

double abel_weight(double, int) { return 0.0; }
double pochhammer_weight(double mu, int k) { return log_gamma(mu + k) - log_gamma(mu); }

std::optional<int> integer_ratio(double r, double alpha) {
    const double q = r / alpha;
    const double p = std::round(q);
    if (p >= 1.0 && std::fabs(q - p) <= 1e-12 * std::max(1.0, p)) return static_cast<int>(p);
    return std::nullopt;
}

Expansion build(double r, double alpha, double mu, bool alternating, int order, LogWeight w) {
    if (order < 1) throw std::domain_error("expansion: order must be >= 1");
    if (!(alpha > 0)) throw std::domain_error("expansion: alpha must be positive");
    if (alternating ? !(r > -1.0) : !(r > 0.0))
        throw std::domain_error(alternating ? "expansion: r + 1 must be positive"
                                            : "expansion: r must be positive");
    if (!(mu > 0)) throw std::domain_error("expansion: mu must be positive");

    Expansion e;
    e.prefactor = 4.0 / pi;
    e.truncation_order = order;
    const double scale = -std::pow(2.0, -r - 1.0);
    const auto p = alternating ? std::nullopt : integer_ratio(r, alpha);

    for (int k = 1; k <= order; ++k) {
        const double mag = std::exp(alpha * k * std::log(2.0) + w(mu, k) - log_gamma(k + 1.0));
        const double sign = k % 2 ? -1.0 : 1.0;
        ExpansionTerm t{static_cast<double>(k), false, 0.0, 0.0};
        if (p && *p == k) {
            double psi_extra = w == abel_weight ? 0.0 : -digamma(mu + k) / alpha;
            const double a = scale * sign * mag;
            t.has_log = true;
            t.coefficient =
                a * (-std::log(2.0) + digamma(k + 1.0) / alpha - digamma(0.5) + psi_extra);
            t.log_coefficient = -a / alpha;
        } else {
            const double s = r + 1.0 - alpha * k;
            const double z = alternating ? hurwitz_zeta_alternating(s, 0.5) : hurwitz_zeta(s, 0.5);
            t.coefficient = scale * sign * mag * z;
            if (!std::isfinite(t.coefficient))
                throw std::overflow_error("expansion: coefficient overflow, lower the order");
        }
        e.terms.push_back(t);
    }

    if (!alternating && !p && r / alpha <= order) {
        const double q = r / alpha;
        const double f = gamma_fn(-q) / alpha *
                         (w == abel_weight ? 1.0 : std::exp(log_gamma(mu + q) - log_gamma(mu)));
        e.terms.push_back({q, false, scale * f * std::pow(2.0, r), 0.0});
    }
    std::sort(e.terms.begin(), e.terms.end(),
              [](const ExpansionTerm& a, const ExpansionTerm& b) { return a.exponent < b.exponent; });
    return e;
}

}  // namespace

Expansion abel_expansion(double r, double alpha, int order) {
    Expansion e = build(r, alpha, 1.0, false, order, abel_weight);
    if (alpha < 1.0)
        e.equality_region = {{0.0, std::numeric_limits<double>::infinity()}};
    else if (alpha == 1.0)
        e.equality_region = {{0.0, pi}};
    return e;
}

Expansion abel_alternating_expansion(double r, double alpha, int order) {
    Expansion e = build(r, alpha, 1.0, true, order, abel_weight);
    if (alpha < 1.0)
        e.equality_region = {{0.0, std::numeric_limits<double>::infinity()}};
    else if (alpha == 1.0)
        e.equality_region = {{0.0, pi / 2.0}};
    return e;
}

Expansion inverse_power_expansion(double r, double alpha, double mu, bool alternating, int order) {
    return build(r, alpha, mu, alternating, order, pochhammer_weight);
}

double evaluate_bare(const Expansion& e, double delta) {
    if (!(delta > 0)) throw std::domain_error("expansion: delta must be positive");
    const double ld = std::log(delta);
    double sum = 0.0;
    for (const auto& t : e.terms) {
        const double c = t.has_log ? t.coefficient + t.log_coefficient * ld : t.coefficient;
        sum += c * std::pow(delta, t.exponent);
    }
    return sum;
}

double evaluate_expansion(const Expansion& e, double delta) {
    return e.prefactor * evaluate_bare(e, delta);
}

}  // namespace wclass
