#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wclass/multipliers.hpp"

namespace wclass {

enum class Norm { one, infinity };

struct ClassParams {
    double r = 1.0;
    int beta = 1;
    int n = 1;
    Norm p = Norm::one;
};

struct OperatorParams {
    double alpha = 1.0;
    double delta = 1.0;
    double gamma = 0.0;
    double rho = 1.0;
};

struct ApproximationResult {
    double value = 0.0;
    double tail_bound = 0.0;
    long terms_used = 0;
    std::string justification = "unverified";
    std::vector<std::string> warnings;
};

struct SeriesSum {
    double value = 0.0;
    double tail_bound = 0.0;
    long terms_used = 0;
};

struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const ClassParams& c);
void validate(const OperatorParams& op);

// bound on Σ_{k>=K} |c_{(2k+1)n}| / (2k+1)
using TailBound = std::function<double(long K)>;

// |c_j| <= C j^{-q}, q > 0
TailBound power_tail(double C, double q, int n);

SeriesSum en_from_sine_coeffs(const std::function<double(long)>& lambda, int n, double tol,
                              const TailBound& tail);
// monotone_tail: terms eventually decrease in magnitude, use the alternating remainder
SeriesSum en_from_cosine_coeffs(const std::function<double(long)>& mu, int n, double tol,
                                const TailBound& tail, bool monotone_tail = false);

std::string check_applicability(const ClassParams& c, const OperatorParams& op,
                                 const MultiplierFamily& f);

ApproximationResult approx_value(const ClassParams& c, const OperatorParams& op,
                                 const MultiplierFamily& f, double tol = 1e-10);
// same series with the plain bracket 1 - h, no γ term
ApproximationResult approx_value_plain(const ClassParams& c, const OperatorParams& op,
                                       const MultiplierFamily& f, double tol = 1e-10);

ApproximationResult cesaro_value(const ClassParams& c, long m, double alpha, double tol = 1e-10);

struct MixingSides {
    double lhs;
    double rhs;
};
MixingSides cesaro_mixing_identity(const ClassParams& c, long m, double alpha, double gamma_order,
                                   double tol = 1e-10);

enum class QForm { u, unit };
// u-form: Q((u-(2k+1)^α)_+)/Q(u); unit form: Q((1-(2k+1)^α δ)_+)/Q(1)
ApproximationResult q_means_value(const ClassParams& c,
                                  const std::vector<std::pair<double, double>>& terms,
                                  double alpha, QForm form, double u_or_delta,
                                  double tol = 1e-10);

double fejer_constant(double r, int beta);

}  // namespace wclass
