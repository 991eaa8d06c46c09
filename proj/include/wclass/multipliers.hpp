#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wclass {

struct unsupported_family : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Exp {};

struct InversePower {
    double mu;
};

struct RieszCutoff {
    double mu;
};

// h(x) = Q(u(1-x)_+) / Q(u), Q(x) = Σ a_k x^{mu_k}.
// u-form brackets Q((u-k^α)_+)/Q(u) use δ = 1/u; unit form is u = 1.
struct QPolynomial {
    std::vector<std::pair<double, double>> terms;  // (a_k, mu_k)
    double u = 1.0;
};

// ν_k = A_{m-k}^α / A_m^α, defined only at integer k.
struct CesaroRatio {
    long m;
    double alpha;
};

struct Sampled {
    std::vector<double> grid;
    std::vector<double> values;
};

using MultiplierFamily =
    std::variant<Exp, InversePower, RieszCutoff, QPolynomial, CesaroRatio, Sampled>;

struct LambdaParams {
    double rho = 1.0;
    double gamma = 0.0;
};

struct GridSpec {
    double lo = 1e-3;
    double hi = 1e3;
    int points = 256;
};

struct MmReport {
    bool nonnegative = true;
    bool decreasing = true;
    bool convex = true;
    double worst_violation = 0.0;
    bool analytic = false;
    bool member() const { return nonnegative && decreasing && convex; }
};

struct LambdaReport {
    bool lambda_convex = false;
    bool minus_derivative_convex = false;
    bool analytic = false;
};

std::string family_name(const MultiplierFamily& f);
void validate(const MultiplierFamily& f);

double eval_h(const MultiplierFamily& f, double x);
// 1 - h(x) without cancellation for the analytic families
double one_minus_h(const MultiplierFamily& f, double x);
double q_eval(const QPolynomial& q, double x);

// closed form where known, numeric otherwise; -inf iff h ≡ 1, +inf if unbounded
double m_of_h(const MultiplierFamily& f);
double m_of_h_numeric(const MultiplierFamily& f, double lo = 1e-4, double hi = 1e4,
                      int probes = 2048);

double gamma_m(const MultiplierFamily& f, int m, double rho);
double lambda_rho_gamma(const MultiplierFamily& f, LambdaParams p, double x);

MmReport check_Mm_function(const std::function<double(double)>& g, int m,
                           const GridSpec& grid = {});
MmReport check_Mm_membership(const MultiplierFamily& f, int m, const GridSpec& grid = {});
LambdaReport check_lambda_conditions(const MultiplierFamily& f, const GridSpec& grid = {});

// max of h(x) - 1 over probes in [lo, hi]
double max_excess_over_one(const MultiplierFamily& f, double lo = 1e-4, double hi = 1e4,
                           int probes = 512);

}  // namespace wclass
