#include "wclass/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wclass/special_functions.hpp"

namespace wclass {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> x(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) x[i] = lo * std::exp(step * i);
    x.back() = hi;
    return x;
}

// clamps the probe window to the hull of a sampled family
std::pair<double, double> probe_window(const MultiplierFamily& f, double lo, double hi) {
    if (const auto* s = std::get_if<Sampled>(&f)) {
        lo = std::max(lo, s->grid.front());
        hi = std::min(hi, s->grid.back());
        if (!(lo < hi)) throw std::domain_error("probe window outside sampled hull");
    }
    return {lo, hi};
}

}  // namespace

std::string family_name(const MultiplierFamily& f) {
    return std::visit(overloaded{[](const Exp&) { return std::string("exp"); },
                                 [](const InversePower&) { return std::string("inverse-power"); },
                                 [](const RieszCutoff&) { return std::string("riesz"); },
                                 [](const QPolynomial&) { return std::string("q-polynomial"); },
                                 [](const CesaroRatio&) { return std::string("cesaro"); },
                                 [](const Sampled&) { return std::string("sampled"); }},
                      f);
}

void validate(const MultiplierFamily& f) {
    std::visit(overloaded{
                   [](const Exp&) {},
                   [](const InversePower& p) {
                       if (!(p.mu > 0)) throw std::domain_error("inverse-power: mu must be positive");
                   },
                   [](const RieszCutoff& p) {
                       if (!(p.mu > 0)) throw std::domain_error("riesz: mu must be positive");
                   },
                   [](const QPolynomial& q) {
                       if (q.terms.empty()) throw std::domain_error("q-polynomial: no terms");
                       if (!(q.u > 0)) throw std::domain_error("q-polynomial: u must be positive");
                       for (auto [a, mu] : q.terms)
                           if (!(a > 0) || !(mu >= 1))
                               throw std::domain_error("q-polynomial: need a_k > 0, mu_k >= 1");
                   },
                   [](const CesaroRatio& c) {
                       if (c.m < 0) throw std::domain_error("cesaro: m must be nonnegative");
                       if (!(c.alpha > -1)) throw std::domain_error("cesaro: alpha must exceed -1");
                   },
                   [](const Sampled& s) {
                       if (s.grid.size() < 2 || s.grid.size() != s.values.size())
                           throw std::domain_error("sampled: need matching grid/values, size >= 2");
                       if (!(s.grid.front() > 0)) throw std::domain_error("sampled: grid must be > 0");
                       for (std::size_t i = 1; i < s.grid.size(); ++i)
                           if (!(s.grid[i] > s.grid[i - 1]))
                               throw std::domain_error("sampled: grid must be strictly increasing");
                   }},
               f);
}

double q_eval(const QPolynomial& q, double x) {
    double v = 0.0;
    for (auto [a, mu] : q.terms) v += a * std::pow(x, mu);
    return v;
}

double eval_h(const MultiplierFamily& f, double x) {
    if (x < 0) throw std::domain_error("eval_h: x must be nonnegative");
    return std::visit(
        overloaded{[&](const Exp&) { return std::exp(-x); },
                   [&](const InversePower& p) { return std::pow(1.0 + x, -p.mu); },
                   [&](const RieszCutoff& p) { return x >= 1.0 ? 0.0 : std::pow(1.0 - x, p.mu); },
                   [&](const QPolynomial& q) {
                       return x >= 1.0 ? 0.0 : q_eval(q, q.u * (1.0 - x)) / q_eval(q, q.u);
                   },
                   [&](const CesaroRatio& c) {
                       const double k = std::round(x);
                       if (std::fabs(x - k) > 1e-9)
                           throw std::domain_error("cesaro: defined only at integer arguments");
                       return cesaro_number(c.m - static_cast<long>(k), c.alpha) /
                              cesaro_number(c.m, c.alpha);
                   },
                   [&](const Sampled& s) {
                       if (x < s.grid.front() || x > s.grid.back())
                           throw std::domain_error("sampled: x outside grid hull");
                       auto it = std::upper_bound(s.grid.begin(), s.grid.end(), x);
                       if (it == s.grid.end()) return s.values.back();
                       const std::size_t j = it - s.grid.begin();
                       const double t = (x - s.grid[j - 1]) / (s.grid[j] - s.grid[j - 1]);
                       return s.values[j - 1] + t * (s.values[j] - s.values[j - 1]);
                   }},
        f);
}

double one_minus_h(const MultiplierFamily& f, double x) {
    if (x < 0) throw std::domain_error("eval_h: x must be nonnegative");
    if (std::holds_alternative<Exp>(f)) return -std::expm1(-x);
    if (const auto* p = std::get_if<InversePower>(&f)) return -std::expm1(-p->mu * std::log1p(x));
    if (const auto* p = std::get_if<RieszCutoff>(&f))
        return x >= 1.0 ? 1.0 : -std::expm1(p->mu * std::log1p(-x));
    return 1.0 - eval_h(f, x);
}

double max_excess_over_one(const MultiplierFamily& f, double lo, double hi, int probes) {
    auto [a, b] = probe_window(f, lo, hi);
    double worst = -inf;
    for (double x : log_grid(a, b, probes)) worst = std::max(worst, eval_h(f, x) - 1.0);
    return worst;
}

double m_of_h_numeric(const MultiplierFamily& f, double lo, double hi, int probes) {
    if (std::holds_alternative<CesaroRatio>(f))
        throw std::domain_error("m(h): cesaro family is sequence-only");
    auto [a, b] = probe_window(f, lo, hi);
    if (max_excess_over_one(f, a, b, probes) > 1e-12)
        throw std::domain_error("m(h): requires h(x) <= 1");
    auto quotient = [&](double x, double& q) {
        const double dx = x * 1e-5;
        const double xl = std::max(a, x - dx), xr = std::min(b, x + dx);
        const double omh = one_minus_h(f, x);
        if (omh == 0.0) return false;
        const double deriv = (one_minus_h(f, xl) - one_minus_h(f, xr)) / (xr - xl);
        q = deriv * x / -omh;
        return true;
    };
    double best = -inf;
    bool any = false;
    for (double x : log_grid(a, b, probes)) {
        double q;
        if (quotient(x, q)) {
            best = std::max(best, q);
            any = true;
        }
    }
    if (!any) return -inf;
    // the supremum is often the limit at 0+; extrapolate from the two smallest probes
    double q1, q2;
    if (quotient(a, q1) && quotient(2 * a, q2)) best = std::max(best, 2 * q1 - q2);
    return best;
}

double m_of_h(const MultiplierFamily& f) {
    if (std::holds_alternative<Exp>(f) || std::holds_alternative<InversePower>(f)) return 1.0;
    if (const auto* p = std::get_if<RieszCutoff>(&f)) return p->mu >= 1.0 ? 1.0 : inf;
    if (const auto* s = std::get_if<Sampled>(&f)) {
        if (std::all_of(s->values.begin(), s->values.end(), [](double v) { return v == 1.0; }))
            return -inf;
    }
    return m_of_h_numeric(f);
}

double gamma_m(const MultiplierFamily& f, int m, double rho) {
    if (m < 1) throw std::domain_error("gamma_m: m must be a positive integer");
    if (!(rho == 1.0 || rho >= 2.0))
        throw unsupported_family("gamma_m: closed form only for rho = 1 or rho >= 2");
    if (std::holds_alternative<Exp>(f)) return rho == 1.0 ? 1.0 / (m + 2) : 1.0;
    if (const auto* p = std::get_if<InversePower>(&f)) {
        if (!(p->mu >= 1.0)) throw unsupported_family("gamma_m: inverse-power needs mu >= 1");
        if (p->mu == 1.0) return 1.0;
        return rho == 1.0 ? (p->mu + m + 1) / (m + 2) : p->mu;
    }
    if (const auto* p = std::get_if<RieszCutoff>(&f)) {
        if (!(p->mu >= m + 1)) throw unsupported_family("gamma_m: riesz needs mu >= m + 1");
        return rho == 1.0 ? (p->mu - m - 1) / (m + 2) : p->mu;
    }
    throw unsupported_family("gamma_m: no closed form for family " + family_name(f));
}

double lambda_rho_gamma(const MultiplierFamily& f, LambdaParams p, double x) {
    if (!(x > 0)) throw std::domain_error("lambda: x must be positive");
    if (!(p.rho >= 1.0)) throw std::domain_error("lambda: rho must be >= 1");
    const double num = one_minus_h(f, x) - p.gamma * x * eval_h(f, x);
    return num / std::pow(x, p.rho);
}

MmReport check_Mm_function(const std::function<double(double)>& g, int m, const GridSpec& grid) {
    if (m < 1) throw std::domain_error("M_m: m must be positive");
    if (grid.points < m + 3) throw std::invalid_argument("M_m: grid too coarse");
    const auto x = log_grid(grid.lo, grid.hi, grid.points);
    // (m-1)-th derivative by divided differences
    std::vector<double> d(x.size()), y(x);
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = g(x[i]);
    double fact = 1.0;
    for (int k = 1; k < m; ++k) {
        fact *= k;
        for (std::size_t i = 0; i + k < x.size(); ++i) d[i] = (d[i + 1] - d[i]) / (x[i + k] - x[i]);
        d.pop_back();
    }
    y.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += x[i + k];
        y[i] = s / m;
        d[i] *= fact * ((m - 1) % 2 == 0 ? 1.0 : -1.0);
    }
    MmReport r;
    auto note = [&](bool& flag, double violation, double scale) {
        if (violation > 1e-9 * (1.0 + scale)) flag = false;
        if (violation > 0) r.worst_violation = std::max(r.worst_violation, violation / (1.0 + scale));
    };
    for (std::size_t i = 0; i < d.size(); ++i) {
        note(r.nonnegative, -d[i], std::fabs(d[i]));
        if (i + 1 < d.size()) note(r.decreasing, d[i + 1] - d[i], std::fabs(d[i]));
        if (i + 2 < d.size()) {
            const double s1 = (d[i + 1] - d[i]) / (y[i + 1] - y[i]);
            const double s2 = (d[i + 2] - d[i + 1]) / (y[i + 2] - y[i + 1]);
            note(r.convex, (s1 - s2) * (y[i + 2] - y[i]), std::fabs(d[i + 1]));
        }
    }
    return r;
}

MmReport check_Mm_membership(const MultiplierFamily& f, int m, const GridSpec& grid) {
    if (m < 1) throw std::domain_error("M_m: m must be positive");
    if (m > 6) throw std::domain_error("M_m: m <= 6 supported");
    if (std::holds_alternative<CesaroRatio>(f))
        throw std::domain_error("M_m: cesaro family is sequence-only");
    if (std::holds_alternative<Exp>(f) || std::holds_alternative<InversePower>(f) ||
        (std::holds_alternative<RieszCutoff>(f) && std::get<RieszCutoff>(f).mu >= m)) {
        MmReport r;
        r.analytic = true;
        return r;
    }
    GridSpec g = grid;
    std::tie(g.lo, g.hi) = probe_window(f, grid.lo, grid.hi);
    return check_Mm_function([&](double x) { return eval_h(f, x); }, m, g);
}

LambdaReport check_lambda_conditions(const MultiplierFamily& f, const GridSpec& grid) {
    if (std::holds_alternative<CesaroRatio>(f))
        throw std::domain_error("lambda conditions: cesaro family is sequence-only");
    LambdaReport r;
    // h in M_2 gives λ convex, h in M_3 gives -λ' convex
    bool m2 = std::holds_alternative<Exp>(f) || std::holds_alternative<InversePower>(f);
    bool m3 = m2;
    if (const auto* p = std::get_if<RieszCutoff>(&f)) {
        m2 = p->mu >= 2.0;
        m3 = p->mu >= 3.0;
    }
    GridSpec g = grid;
    std::tie(g.lo, g.hi) = probe_window(f, grid.lo, grid.hi);
    auto lam = [&](double x) { return one_minus_h(f, x) / x; };
    r.lambda_convex = m2 || check_Mm_function(lam, 1, g).convex;
    r.minus_derivative_convex = m3 || check_Mm_function(lam, 2, g).convex;
    r.analytic = m3;
    return r;
}

}  // namespace wclass
