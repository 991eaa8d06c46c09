#include "wclass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wclass {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr long coefficient_cap = 50'000'000;

double trig_cos(int beta) { return beta % 2 ? 0.0 : (beta / 2 % 2 ? -1.0 : 1.0); }
double trig_sin(int beta) { return beta % 2 ? ((beta - 1) / 2 % 2 ? -1.0 : 1.0) : 0.0; }

long terms_needed(const KernelSpec& spec, double tol) {
    long M;
    if (spec.support >= 0) {
        M = spec.support;
    } else if (spec.decay_C == 0.0) {
        M = 0;
    } else if (spec.decay_exponent <= 1.0) {
        M = coefficient_cap + 1;
    } else {
        const double q = spec.decay_exponent - 1.0;
        const double m = std::ceil(std::pow(spec.decay_C / (q * tol), 1.0 / q));
        M = m > coefficient_cap ? coefficient_cap + 1 : static_cast<long>(m);
    }
    if (M > coefficient_cap) throw slow_decay_error("kernel: coefficients decay too slowly to synthesize");
    return M;
}

double closed_part(const KernelSpec& spec, double t) {
    if (!spec.closed_form_beta) return 0.0;
    double u = std::fmod(t, 2.0 * pi);
    if (u < 0) u += 2.0 * pi;
    if (u == 0.0) {
        if (*spec.closed_form_beta % 2 == 0)
            throw std::domain_error("kernel: unbounded at t = 0 for even beta");
        return 0.0;
    }
    return spec.closed_form_scale * psi1_closed_form(*spec.closed_form_beta, u);
}

double coef(const std::function<double(long)>& f, long k) { return f ? f(k) : 0.0; }

int sign_of(double x) { return (x > 0) - (x < 0); }

double mode_sign(SignMode mode, int n, double t) {
    return sign_of(mode == SignMode::sine ? std::sin(n * t) : std::cos(n * t));
}

std::vector<double> expand_t_star(const std::vector<double>& T_star, int n) {
    if (T_star.size() == 1) return T_star;
    if (T_star.size() != static_cast<std::size_t>(2 * n - 1))
        throw std::invalid_argument("T*: expected 1 or 2n-1 coefficients");
    return T_star;
}

// maximize c·x subject to A x = 0, lo <= x <= hi, over p rows
class BoundedSimplex {
public:
    BoundedSimplex(int p, std::vector<std::vector<double>> cols, std::vector<double> cost)
        : p_(p), cols_(std::move(cols)), cost_(std::move(cost)) {}

    std::vector<double> solve(long& iterations) {
        const int N = static_cast<int>(cols_.size());
        // artificial columns ±e_i appended
        x_.assign(N + p_, 0.0);
        lo_.assign(N + p_, -1.0);
        hi_.assign(N + p_, 1.0);
        for (int j = 0; j < N; ++j) x_[j] = cost_[j] >= 0 ? 1.0 : -1.0;
        std::vector<double> resid(p_, 0.0);
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < p_; ++i) resid[i] -= cols_[j][i] * x_[j];
        art_sign_.assign(p_, 1.0);
        basis_.resize(p_);
        binv_.assign(p_, std::vector<double>(p_, 0.0));
        for (int i = 0; i < p_; ++i) {
            art_sign_[i] = resid[i] >= 0 ? 1.0 : -1.0;
            lo_[N + i] = 0.0;
            hi_[N + i] = inf;
            x_[N + i] = std::fabs(resid[i]);
            basis_[i] = N + i;
            binv_[i][i] = art_sign_[i];
        }
        std::vector<double> phase1(N + p_, 0.0);
        for (int i = 0; i < p_; ++i) phase1[N + i] = -1.0;
        run(phase1, iterations);
        for (int i = 0; i < p_; ++i) {
            if (x_[N + i] > 1e-9) throw std::runtime_error("l1 fit: phase one failed");
            hi_[N + i] = 0.0;
            x_[N + i] = 0.0;
        }
        std::vector<double> phase2(N + p_, 0.0);
        std::copy(cost_.begin(), cost_.end(), phase2.begin());
        run(phase2, iterations);
        return duals(phase2);
    }

private:
    int p_;
    std::vector<std::vector<double>> cols_;
    std::vector<double> cost_;
    std::vector<double> x_, lo_, hi_, art_sign_;
    std::vector<int> basis_;
    std::vector<std::vector<double>> binv_;

    double col(int j, int i) const {
        const int N = static_cast<int>(cols_.size());
        if (j < N) return cols_[j][i];
        return j - N == i ? art_sign_[i] : 0.0;
    }

    std::vector<double> duals(const std::vector<double>& c) const {
        std::vector<double> y(p_, 0.0);
        for (int i = 0; i < p_; ++i)
            for (int k = 0; k < p_; ++k) y[k] += c[basis_[i]] * binv_[i][k];
        return y;
    }

    void refresh_basic() {
        const int total = static_cast<int>(x_.size());
        std::vector<char> is_basic(total, 0);
        for (int b : basis_) is_basic[b] = 1;
        std::vector<double> rhs(p_, 0.0);
        for (int j = 0; j < total; ++j)
            if (!is_basic[j] && x_[j] != 0.0)
                for (int i = 0; i < p_; ++i) rhs[i] -= col(j, i) * x_[j];
        for (int i = 0; i < p_; ++i) {
            double v = 0.0;
            for (int k = 0; k < p_; ++k) v += binv_[i][k] * rhs[k];
            x_[basis_[i]] = v;
        }
    }

    void run(const std::vector<double>& c, long& iterations) {
        const int total = static_cast<int>(x_.size());
        double cmax = 0.0;
        for (double v : c) cmax = std::max(cmax, std::fabs(v));
        const double eps = 1e-12 * std::max(cmax, 1e-300);
        std::vector<char> is_basic(total, 0);
        for (int b : basis_) is_basic[b] = 1;
        int degenerate = 0;
        for (long iter = 0;; ++iter) {
            if (iter > 200000) throw std::runtime_error("l1 fit: simplex iteration limit");
            const auto y = duals(c);
            const bool bland = degenerate > 50;
            int q = -1;
            double best = 0.0;
            int dir = 0;
            for (int j = 0; j < total; ++j) {
                if (is_basic[j] || hi_[j] <= lo_[j]) continue;
                double d = c[j];
                for (int i = 0; i < p_; ++i) d -= y[i] * col(j, i);
                int dj = 0;
                if (d > eps && x_[j] < hi_[j]) dj = 1;
                else if (d < -eps && x_[j] > lo_[j]) dj = -1;
                if (!dj) continue;
                if (bland) {
                    q = j;
                    dir = dj;
                    break;
                }
                if (std::fabs(d) > best) {
                    best = std::fabs(d);
                    q = j;
                    dir = dj;
                }
            }
            if (q < 0) return;
            ++iterations;
            std::vector<double> a(p_, 0.0);
            for (int i = 0; i < p_; ++i)
                for (int k = 0; k < p_; ++k) a[i] += binv_[i][k] * col(q, k);
            double theta = hi_[q] - lo_[q];
            int leave = -1;
            double pivot_mag = 0.0;
            for (int i = 0; i < p_; ++i) {
                const double rate = -dir * a[i];
                const int b = basis_[i];
                double lim;
                if (rate < -1e-12) lim = (x_[b] - lo_[b]) / -rate;
                else if (rate > 1e-12) lim = (hi_[b] - x_[b]) / rate;
                else continue;
                lim = std::max(lim, 0.0);
                if (lim < theta - 1e-15 ||
                    (leave >= 0 && lim <= theta + 1e-15 && std::fabs(a[i]) > pivot_mag)) {
                    theta = lim;
                    leave = i;
                    pivot_mag = std::fabs(a[i]);
                }
            }
            if (!std::isfinite(theta)) throw std::runtime_error("l1 fit: unbounded program");
            degenerate = theta == 0.0 ? degenerate + 1 : 0;
            x_[q] += dir * theta;
            for (int i = 0; i < p_; ++i) x_[basis_[i]] += -dir * a[i] * theta;
            if (leave >= 0) {
                const int b = basis_[leave];
                x_[b] = -dir * a[leave] < 0 ? lo_[b] : hi_[b];
                const double piv = a[leave];
                for (int k = 0; k < p_; ++k) binv_[leave][k] /= piv;
                for (int i = 0; i < p_; ++i) {
                    if (i == leave || a[i] == 0.0) continue;
                    for (int k = 0; k < p_; ++k) binv_[i][k] -= a[i] * binv_[leave][k];
                }
                is_basic[b] = 0;
                is_basic[q] = 1;
                basis_[leave] = q;
            } else {
                x_[q] = dir > 0 ? hi_[q] : lo_[q];
            }
            if (iterations % 64 == 0) refresh_basic();
        }
    }
};

std::vector<double> basis_values(int n, double t) {
    std::vector<double> v{1.0};
    for (int k = 1; k < n; ++k) {
        v.push_back(std::cos(k * t));
        v.push_back(std::sin(k * t));
    }
    return v;
}

}  // namespace

double PeriodicSamples::t(int j) const { return -pi + 2.0 * pi * j / grid_size; }

double psi1_closed_form(int beta, double t) {
    double u = std::fmod(t, 2.0 * pi);
    if (u < 0) u += 2.0 * pi;
    if (u == 0.0) throw std::domain_error("psi1: t is a multiple of 2pi");
    return -2.0 * trig_cos(beta) * std::log(2.0 * std::sin(u / 2.0)) + trig_sin(beta) * (pi - u);
}

double eval_kernel(const KernelSpec& spec, double t, double tol) {
    const long M = terms_needed(spec, tol);
    double sum = 0.0;
    for (long k = M; k >= 1; --k)
        sum += coef(spec.cosine_coeffs, k) * std::cos(k * t) + coef(spec.sine_coeffs, k) * std::sin(k * t);
    return spec.constant + closed_part(spec, t) + sum;
}

PeriodicSamples synthesize_kernel(const KernelSpec& spec, int N, double tol) {
    if (N < 64 || (N & (N - 1)) != 0) throw std::domain_error("kernel: N must be a power of two >= 64");
    const long M = terms_needed(spec, tol);
    // cos(k t_j) = (-1)^k cos(2π (k mod N) j / N), same for sin
    std::vector<double> C(N, 0.0), S(N, 0.0);
    for (long k = 1; k <= M; ++k) {
        const double s = k % 2 ? -1.0 : 1.0;
        C[k % N] += s * coef(spec.cosine_coeffs, k);
        S[k % N] += s * coef(spec.sine_coeffs, k);
    }
    std::vector<double> ct(N), st(N);
    for (int m = 0; m < N; ++m) {
        ct[m] = std::cos(2.0 * pi * m / N);
        st[m] = std::sin(2.0 * pi * m / N);
    }
    PeriodicSamples out{N, std::vector<double>(N, 0.0)};
    for (int j = 0; j < N; ++j) {
        double v = 0.0;
        for (int r = 0; r < N; ++r) {
            if (C[r] == 0.0 && S[r] == 0.0) continue;
            const int m = static_cast<int>((static_cast<long>(r) * j) % N);
            v += C[r] * ct[m] + S[r] * st[m];
        }
        out.values[j] = spec.constant + closed_part(spec, out.t(j)) + v;
    }
    return out;
}

KernelSpec operator_kernel(const ClassParams& c, const OperatorParams& op,
                           const MultiplierFamily& f, double scale) {
    validate(c);
    validate(op);
    validate(f);
    if (std::holds_alternative<CesaroRatio>(f) || std::holds_alternative<Sampled>(f))
        throw unsupported_family("kernel: family " + family_name(f) + " not supported");
    const double cb = trig_cos(c.beta), sb = trig_sin(c.beta);
    const double r = c.r, alpha = op.alpha, delta = op.delta, gamma = op.gamma;
    auto x_of = [=](long k) { return std::pow(static_cast<double>(k), alpha) * delta; };

    KernelSpec spec;
    long support = -1;
    if (std::holds_alternative<RieszCutoff>(f) || std::holds_alternative<QPolynomial>(f))
        support = static_cast<long>(std::floor(std::pow(1.0 / delta, 1.0 / alpha)));

    if (r > 1.0) {
        double B = 1.0;
        if (gamma != 0.0) {
            double sup_xh = 1.0;
            if (std::holds_alternative<Exp>(f)) sup_xh = 1.0 / std::numbers::e;
            if (const auto* p = std::get_if<InversePower>(&f)) {
                if (p->mu <= 1.0) throw slow_decay_error("kernel: (1+γx)h(x) is unbounded");
                const double xm = 1.0 / (p->mu - 1.0);
                sup_xh = xm * std::pow(1.0 + xm, -p->mu);
            }
            B = 1.0 + std::fabs(gamma) * sup_xh;
        }
        auto bracket = [=](long k) {
            const double x = x_of(k);
            return gamma == 0.0 ? one_minus_h(f, x) : 1.0 - (1.0 + gamma * x) * eval_h(f, x);
        };
        spec.cosine_coeffs = [=](long k) { return scale * 2.0 * cb * bracket(k) / std::pow(k, r); };
        spec.sine_coeffs = [=](long k) { return scale * 2.0 * sb * bracket(k) / std::pow(k, r); };
        spec.decay_C = std::fabs(scale) * 2.0 * B;
        spec.decay_exponent = r;
        spec.support = support;
        return spec;
    }
    if (r != 1.0 || gamma != 0.0)
        throw slow_decay_error("kernel: r <= 1 is only synthesized for r = 1, gamma = 0");
    // ψ_{1,β} in closed form minus the smoothed part
    spec.closed_form_beta = c.beta;
    spec.closed_form_scale = scale;
    spec.cosine_coeffs = [=](long k) { return -scale * 2.0 * cb * eval_h(f, x_of(k)) / k; };
    spec.sine_coeffs = [=](long k) { return -scale * 2.0 * sb * eval_h(f, x_of(k)) / k; };
    if (std::holds_alternative<Exp>(f)) {
        // e^{-x} <= (4/e)^4 x^{-4}
        spec.decay_C = std::fabs(scale) * 2.0 * std::pow(4.0 / std::numbers::e, 4) / std::pow(delta, 4);
        spec.decay_exponent = 1.0 + 4.0 * alpha;
    } else if (const auto* p = std::get_if<InversePower>(&f)) {
        spec.decay_C = std::fabs(scale) * 2.0 * std::pow(delta, -p->mu);
        spec.decay_exponent = 1.0 + alpha * p->mu;
    } else {
        spec.decay_C = std::fabs(scale) * 2.0;
        spec.decay_exponent = 1.0;
        spec.support = support;
    }
    return spec;
}

double eval_poly(const std::vector<double>& coeffs, double t) {
    double v = coeffs.empty() ? 0.0 : coeffs[0];
    for (std::size_t k = 1; 2 * k < coeffs.size(); ++k)
        v += coeffs[2 * k - 1] * std::cos(k * t) + coeffs[2 * k] * std::sin(k * t);
    return v;
}

L1Result l1_best_approx(const PeriodicSamples& samples, int n) {
    const int N = samples.grid_size;
    if (n < 1) throw std::domain_error("l1 fit: n must be >= 1");
    const int p = 2 * n - 1;
    if (p >= N / 4) throw std::domain_error("l1 fit: 2n-1 must be below N/4");
    const double w = 2.0 * pi / N;
    std::vector<std::vector<double>> cols(N);
    std::vector<double> cost(N);
    for (int j = 0; j < N; ++j) {
        cols[j] = basis_values(n, samples.t(j));
        for (double& v : cols[j]) v *= w;
        cost[j] = w * samples.values[j];
    }
    L1Result res;
    BoundedSimplex lp(p, std::move(cols), std::move(cost));
    res.poly_coeffs = lp.solve(res.iterations);
    double v = 0.0;
    for (int j = 0; j < N; ++j)
        v += w * std::fabs(samples.values[j] - eval_poly(res.poly_coeffs, samples.t(j)));
    res.value = v;
    return res;
}

SignReport sign_condition_check(const PeriodicSamples& samples, int n, SignMode mode,
                                const std::vector<double>& T_star) {
    const auto T = expand_t_star(T_star, n);
    SignReport rep;
    double kmax = 0.0;
    rep.min_value = inf;
    for (int j = 0; j < samples.grid_size; ++j) {
        const double t = samples.t(j);
        const double d = samples.values[j] - eval_poly(T, t);
        kmax = std::max(kmax, std::fabs(samples.values[j]));
        rep.min_value = std::min(rep.min_value, mode_sign(mode, n, t) * d);
    }
    rep.tolerance = 1e-9 * (1.0 + kmax);
    rep.pass = rep.min_value >= -rep.tolerance;
    return rep;
}

double cosine_t_star(const PeriodicSamples& samples, int n) {
    const double t = pi / (2.0 * n);
    const double pos = (t + pi) * samples.grid_size / (2.0 * pi);
    const int j = static_cast<int>(std::floor(pos));
    const double frac = pos - j;
    const double a = samples.values[j % samples.grid_size];
    if (frac == 0.0) return a;
    return a + frac * (samples.values[(j + 1) % samples.grid_size] - a);
}

double extremal_value(const PeriodicSamples& samples, int n, SignMode mode,
                      const std::vector<double>& T_star) {
    if (!sign_condition_check(samples, n, mode, T_star).pass)
        throw std::domain_error("extremal value: sign condition fails");
    const auto T = expand_t_star(T_star, n);
    const int N = samples.grid_size;
    std::vector<double> g(N);
    for (int j = 0; j < N; ++j) {
        const double t = samples.t(j);
        g[j] = mode_sign(mode, n, t) * (samples.values[j] - eval_poly(T, t));
    }
    // at zeros of the sign pattern take the mean of the one-sided neighbours
    double v = 0.0;
    for (int j = 0; j < N; ++j) {
        const bool zero = mode_sign(mode, n, samples.t(j)) == 0.0;
        v += zero ? 0.5 * (g[(j + N - 1) % N] + g[(j + 1) % N]) : g[j];
    }
    return v / N;
}

PositivityReport positivity_check(const std::function<double(long)>& nu, int N, long M_terms) {
    if (N < 1 || M_terms < 1) throw std::domain_error("positivity: N and M must be positive");
    std::vector<double> c(M_terms + 1);
    double mass = 0.0;
    for (long k = 0; k <= M_terms; ++k) {
        c[k] = k == 0 ? nu(0) / 2.0 : (1.0 - static_cast<double>(k) / M_terms) * nu(k);
        mass += std::fabs(c[k]);
    }
    PositivityReport rep;
    rep.min_value = inf;
    for (int j = 0; j < N; ++j) {
        const double t = -pi + 2.0 * pi * j / N;
        double s = 0.0;
        for (long k = M_terms; k >= 1; --k) s += c[k] * std::cos(k * t);
        rep.min_value = std::min(rep.min_value, s + c[0]);
    }
    rep.tolerance = 1e-9 * (1.0 + mass);
    rep.pass = rep.min_value >= -rep.tolerance;
    return rep;
}

}  // namespace wclass
