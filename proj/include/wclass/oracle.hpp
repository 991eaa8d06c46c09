#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wclass/multipliers.hpp"
#include "wclass/series_engine.hpp"

namespace wclass {

struct slow_decay_error : std::domain_error {
    using std::domain_error::domain_error;
};

// values at t_j = -π + 2πj/N
struct PeriodicSamples {
    int grid_size = 0;
    std::vector<double> values;
    double t(int j) const;
};

// K(t) = constant + closed_form_scale·ψ_{1,β}(t) + Σ_{k>=1} μ_k cos kt + λ_k sin kt,
// with |μ_k| + |λ_k| <= decay_C k^{-decay_exponent}.
struct KernelSpec {
    std::function<double(long)> cosine_coeffs;
    std::function<double(long)> sine_coeffs;
    double constant = 0.0;
    double decay_C = 0.0;
    double decay_exponent = 0.0;
    long support = -1;  // coefficients vanish for k > support when >= 0
    std::optional<int> closed_form_beta;
    double closed_form_scale = 1.0;
};

// ψ_{1,β}(t), t not a multiple of 2π
double psi1_closed_form(int beta, double t);

double eval_kernel(const KernelSpec& spec, double t, double tol = 1e-9);
PeriodicSamples synthesize_kernel(const KernelSpec& spec, int N, double tol = 1e-7);

// Fourier coefficients of ψ_{r,β}·(1 - (1+γx)h(x)), x = k^α δ, times scale
KernelSpec operator_kernel(const ClassParams& c, const OperatorParams& op,
                           const MultiplierFamily& f, double scale = 1.0);

struct L1Result {
    double value = 0.0;
    std::vector<double> poly_coeffs;  // 1, cos t, sin t, ..., cos(n-1)t, sin(n-1)t
    long iterations = 0;
};
L1Result l1_best_approx(const PeriodicSamples& samples, int n);

double eval_poly(const std::vector<double>& coeffs, double t);

enum class SignMode { sine, cosine };

struct SignReport {
    double min_value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// T_star: one constant or 2n-1 polynomial coefficients
SignReport sign_condition_check(const PeriodicSamples& samples, int n, SignMode mode,
                                const std::vector<double>& T_star);
// K(π/(2n)), the constant used with cosine mode
double cosine_t_star(const PeriodicSamples& samples, int n);
double extremal_value(const PeriodicSamples& samples, int n, SignMode mode,
                      const std::vector<double>& T_star);

struct PositivityReport {
    double min_value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
// ν_0/2 + Σ_{k=1}^{M} (1 - k/M) ν_k cos kt on N points
PositivityReport positivity_check(const std::function<double(long)>& nu, int N, long M_terms);

}  // namespace wclass
