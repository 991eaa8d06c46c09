#include "wclass/series_engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wclass/special_functions.hpp"

namespace wclass {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr long term_cap = 10'000'000;

bool is_odd(int beta) { return beta % 2 != 0; }

bool builtin(const MultiplierFamily& f) {
    return std::holds_alternative<Exp>(f) || std::holds_alternative<InversePower>(f) ||
           std::holds_alternative<RieszCutoff>(f);
}

// Σ_{k>=0} s_k (2k+1)^{-s}, s_k = 1 (plain) or (-1)^k
double odd_zeta(double s, bool alternating) {
    const double scale = std::pow(2.0, -s);
    return alternating ? scale * hurwitz_zeta_alternating(s, 0.5) : scale * hurwitz_zeta(s, 0.5);
}

// sup_{x >= x0} |(1 + γx) h(x)|
double envelope(const MultiplierFamily& f, double gamma, double x0) {
    const double g = std::fabs(gamma);
    if (std::holds_alternative<Exp>(f))
        return x0 >= 1.0 ? (1.0 + g * x0) * std::exp(-x0) : 1.0 + g / std::numbers::e;
    if (const auto* p = std::get_if<InversePower>(&f)) {
        if (gamma == 0.0) return std::pow(1.0 + x0, -p->mu);
        if (p->mu <= 1.0) return inf;
        return std::max(1.0, g) * std::pow(1.0 + x0, 1.0 - p->mu);
    }
    if (std::holds_alternative<RieszCutoff>(f) || std::holds_alternative<QPolynomial>(f))
        return x0 >= 1.0 ? 0.0 : 1.0 + g;
    throw std::domain_error("series: family " + family_name(f) + " has no usable envelope");
}

double kahan_add(double& sum, double& comp, double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    return sum;
}

SeriesSum series_value(double r, int beta, int n, double alpha, double delta, double gamma,
                       const MultiplierFamily& f, double tol, bool plain) {
    const double s = r + 1.0;
    const bool alt = !is_odd(beta);
    const double pref = 4.0 / (pi * std::pow(n, r));
    const double base = odd_zeta(s, alt);
    double sum = 0.0, comp = 0.0;
    long k = 0;
    double bound = inf;
    for (; k < term_cap; ++k) {
        const double j = 2.0 * k + 1.0;
        const double x = std::pow(j * n, alpha) * delta;
        const double hk = plain ? eval_h(f, x) : (1.0 + gamma * x) * eval_h(f, x);
        const double term = hk / std::pow(j, s);
        kahan_add(sum, comp, alt && (k % 2) ? -term : term);
        const double xn = std::pow((j + 2.0) * n, alpha) * delta;
        const double env = envelope(f, plain ? 0.0 : gamma, xn);
        if (std::isinf(env)) throw divergence_error("series: coefficients are not bounded");
        bound = pref * env * std::pow(j, -r) / (2.0 * r);
        if (bound <= tol) break;
    }
    if (bound > tol) throw divergence_error("series: tail bound not reached within term cap");
    return {pref * (base - sum), bound, k + 1};
}

double cesaro_series(double r, int beta, long m, double alpha, long* terms = nullptr) {
    const double s = r + 1.0;
    const bool alt = !is_odd(beta);
    const double am = cesaro_number(m, alpha);
    double sum = 0.0;
    long k = 0;
    for (; 2 * k + 1 <= m; ++k) {
        const double term = cesaro_number(m - 2 * k - 1, alpha) / am / std::pow(2.0 * k + 1, s);
        sum += alt && (k % 2) ? -term : term;
    }
    if (terms) *terms = k;
    return 4.0 / pi * (odd_zeta(s, alt) - sum);
}

std::string thZast1_tag(const ClassParams& c, const OperatorParams& op, const MultiplierFamily& f) {
    if (op.gamma != 0.0 || !builtin(f) || !(op.alpha <= 1.0)) return {};
    const auto lam = check_lambda_conditions(f);
    if (!lam.lambda_convex) return {};
    if (is_odd(c.beta)) return c.r >= op.alpha ? "thZast1-case1" : "";
    if (lam.minus_derivative_convex && c.r >= op.alpha) return "thZast1-case2-strong";
    if (c.n == 1 && c.r >= op.alpha + 1.0) return "thZast1-case2";
    return {};
}

std::string thZast_tag(const ClassParams& c, const OperatorParams& op, const MultiplierFamily& f) {
    if (op.gamma != 0.0 || !builtin(f) || c.n != 1) return {};
    const double mh = m_of_h(f);
    if (!std::isfinite(mh)) return {};
    if (is_odd(c.beta)) return c.r >= op.alpha * mh + 1.0 ? "thZast-case1" : "";
    return c.r >= op.alpha * mh + 2.0 ? "thZast-case2" : "";
}

// γ_m(ρ,h) or its lower bound γ_m(1,h) for ρ in (1,2); NaN if unknown
double gamma_m_bound(const MultiplierFamily& f, int m, double rho) {
    try {
        return gamma_m(f, m, rho < 2.0 ? 1.0 : rho);
    } catch (const unsupported_family&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

std::string thZast3_tag(const ClassParams& c, const OperatorParams& op, const MultiplierFamily& f) {
    if (!builtin(f)) return {};
    if (const auto* p = std::get_if<InversePower>(&f); p && !(p->mu > 1.0)) return {};
    if (!check_Mm_membership(f, 2).member()) return {};
    const double a = op.alpha, rho = op.rho;
    const bool odd = is_odd(c.beta);
    if (!odd && a <= 1.0 && c.r >= a * rho && check_Mm_membership(f, 3).member()) {
        const double g2 = gamma_m_bound(f, 2, rho);
        if (op.gamma <= g2) return "thZast3-strong";
    }
    const double g1 = gamma_m_bound(f, 1, rho);
    if (!(op.gamma <= g1)) return {};
    if (odd) {
        if (a <= 1.0 && c.r >= a * rho) return "thZast3-1i";
        if (a > 1.0 && c.n == 1 && c.r >= a * rho + 1.0) return "thZast3-1ii";
    } else {
        if (a <= 1.0 && c.n == 1 && c.r >= a * rho + 1.0) return "thZast3-2i";
        if (a > 1.0 && c.n == 1 && c.r >= a * rho + 2.0) return "thZast3-2ii";
    }
    return {};
}

bool positive_definite(const OperatorParams& op, const MultiplierFamily& f) {
    const double a = op.alpha, g = op.gamma;
    if (std::holds_alternative<Exp>(f))
        return (a <= 2.0 && g == 0.0) || (a == 1.0 && g >= -1.0 && g <= 1.0);
    if (std::holds_alternative<InversePower>(f)) return a <= 2.0 && g == 0.0;
    if (const auto* p = std::get_if<RieszCutoff>(&f)) {
        // Kuttner's λ is increasing with λ(1) = 1, so μ >= 1 suffices for α <= 1
        if (g == 0.0 && a <= 1.0 && p->mu >= 1.0) return true;
        return a == 1.0 && g >= -3.0 && g <= 0.0 && (p->mu == 1.0 || p->mu >= 2.0);
    }
    return false;
}

bool pd_r_case(double r, int beta) {
    return is_odd(beta) ? (r == 1.0 || r >= 2.0) : (r == 2.0 || r >= 3.0);
}

std::string thZast4_tag(const ClassParams& c, const OperatorParams& op, const MultiplierFamily& f) {
    if (c.n != 1 || !positive_definite(op, f)) return {};
    return pd_r_case(c.r, c.beta) ? "thZast4" : "";
}

void note_unverified(ApproximationResult& res) {
    if (res.justification == "unverified")
        res.warnings.push_back("no theorem case covers these parameters; value is the formal series");
}

}  // namespace

void validate(const ClassParams& c) {
    if (!(c.r > 0)) throw std::domain_error("class: r must be positive");
    if (c.n < 1) throw std::domain_error("class: n must be >= 1");
}

void validate(const OperatorParams& op) {
    if (!(op.alpha > 0)) throw std::domain_error("operator: alpha must be positive");
    if (!(op.delta > 0)) throw std::domain_error("operator: delta must be positive");
    if (!(op.rho >= 1)) throw std::domain_error("operator: rho must be >= 1");
    if (!std::isfinite(op.gamma)) throw std::domain_error("operator: gamma must be finite");
}

TailBound power_tail(double C, double q, int n) {
    return [=](long K) {
        if (K < 1) return inf;
        return C * std::pow(n, -q) * std::pow(2.0 * K - 1.0, -q) / (2.0 * q);
    };
}

SeriesSum en_from_sine_coeffs(const std::function<double(long)>& lambda, int n, double tol,
                              const TailBound& tail) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    long K = 1;
    while (tail(K) * 2.0 / pi > tol) {
        if (K >= term_cap) throw divergence_error("sine series: tail bound not achievable");
        K *= 2;
    }
    double sum = 0.0;
    for (long k = K - 1; k >= 0; --k) sum += lambda((2 * k + 1) * n) / (2.0 * k + 1);
    return {2.0 / pi * sum, tail(K) * 2.0 / pi, K};
}

SeriesSum en_from_cosine_coeffs(const std::function<double(long)>& mu, int n, double tol,
                                const TailBound& tail, bool monotone_tail) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    auto term = [&](long k) { return mu((2 * k + 1) * n) / (2.0 * k + 1); };
    long K = 1;
    auto bound = [&](long K) {
        return 2.0 / pi * (monotone_tail ? std::fabs(term(K)) : tail(K));
    };
    while (bound(K) > tol) {
        if (K >= term_cap) throw divergence_error("cosine series: tail bound not achievable");
        K *= 2;
    }
    double sum = 0.0;
    for (long k = K - 1; k >= 0; --k) sum += (k % 2 ? -1.0 : 1.0) * term(k);
    return {2.0 / pi * sum, bound(K), K};
}

std::string check_applicability(const ClassParams& c, const OperatorParams& op,
                                 const MultiplierFamily& f) {
    for (auto rule : {thZast1_tag, thZast_tag, thZast3_tag, thZast4_tag}) {
        std::string tag = rule(c, op, f);
        if (!tag.empty()) return tag;
    }
    return "unverified";
}

ApproximationResult approx_value(const ClassParams& c, const OperatorParams& op,
                                 const MultiplierFamily& f, double tol) {
    validate(c);
    validate(op);
    validate(f);
    const auto s = series_value(c.r, c.beta, c.n, op.alpha, op.delta, op.gamma, f, tol, false);
    ApproximationResult res{s.value, s.tail_bound, s.terms_used, check_applicability(c, op, f), {}};
    note_unverified(res);
    return res;
}

ApproximationResult approx_value_plain(const ClassParams& c, const OperatorParams& op,
                                       const MultiplierFamily& f, double tol) {
    validate(c);
    validate(op);
    validate(f);
    OperatorParams plain = op;
    plain.gamma = 0.0;
    const auto s = series_value(c.r, c.beta, c.n, op.alpha, op.delta, 0.0, f, tol, true);
    ApproximationResult res{s.value, s.tail_bound, s.terms_used, check_applicability(c, plain, f), {}};
    note_unverified(res);
    return res;
}

ApproximationResult cesaro_value(const ClassParams& c, long m, double alpha, double) {
    validate(c);
    if (c.n != 1) throw std::domain_error("cesaro: only n = 1 is supported");
    if (m < 0) throw std::domain_error("cesaro: m must be nonnegative");
    if (!(alpha >= 1.0)) throw std::domain_error("cesaro: alpha must be >= 1");
    ApproximationResult res;
    res.value = cesaro_series(c.r, c.beta, m, alpha, &res.terms_used);
    res.justification = pd_r_case(c.r, c.beta) ? (is_odd(c.beta) ? "thChezaro-1" : "thChezaro-2")
                                               : "unverified";
    note_unverified(res);
    return res;
}

MixingSides cesaro_mixing_identity(const ClassParams& c, long m, double alpha, double gamma_order,
                                   double tol) {
    if (!(gamma_order >= 1.0)) throw std::domain_error("cesaro: gamma order must be >= 1");
    const double lhs = cesaro_value(c, m, alpha, tol).value;
    double rhs = 0.0;
    for (long k = 0; k <= m; ++k)
        rhs += cesaro_number(m - k, alpha - gamma_order - 1.0) * cesaro_number(k, gamma_order) *
               cesaro_value(c, k, gamma_order, tol).value;
    return {lhs, rhs / cesaro_number(m, alpha)};
}

ApproximationResult q_means_value(const ClassParams& c,
                                  const std::vector<std::pair<double, double>>& terms,
                                  double alpha, QForm form, double u_or_delta, double tol) {
    validate(c);
    if (c.n != 1) throw std::domain_error("q-means: only n = 1 is supported");
    if (!(alpha > 0)) throw std::domain_error("q-means: alpha must be positive");
    if (!(u_or_delta > 0)) throw std::domain_error("q-means: u or delta must be positive");
    QPolynomial q{terms, form == QForm::u ? u_or_delta : 1.0};
    validate(MultiplierFamily{q});
    const double delta = form == QForm::u ? 1.0 / u_or_delta : u_or_delta;
    const auto s = series_value(c.r, c.beta, 1, alpha, delta, 0.0, q, tol, true);
    ApproximationResult res{s.value, s.tail_bound, s.terms_used, "unverified", {}};
    if (alpha <= 1.0 && pd_r_case(c.r, c.beta))
        res.justification = is_odd(c.beta) ? "thPolinom-1" : "thPolinom-2";
    note_unverified(res);
    return res;
}

double fejer_constant(double r, int beta) {
    if (!(r > 0)) throw std::domain_error("fejer constant: r must be positive");
    if (is_odd(beta) && r <= 1.0) throw divergence_error("fejer constant: diverges for odd beta, r <= 1");
    return 4.0 / pi * odd_zeta(r, !is_odd(beta));
}

}  // namespace wclass
