#pragma once

#include <stdexcept>
#include <string>

namespace wclass {

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

double gamma_fn(double x);
// log|Γ(x)|
double log_gamma(double x);
double digamma(double x);

// ζ(s,a) continued to all real s != 1.
double hurwitz_zeta(double s, double a);
double riemann_zeta(double s);

// Σ (-1)^k (k+a)^{-s}, entire in s.
double hurwitz_zeta_alternating(double s, double a);

// A_n^α; zero for n < 0.
double cesaro_number(long n, double alpha);

}  // namespace wclass
