#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace wclass {

// δ^exponent (coefficient + log_coefficient·ln δ)
struct ExpansionTerm {
    double exponent = 0.0;
    bool has_log = false;
    double coefficient = 0.0;
    double log_coefficient = 0.0;
};

// prefactor·Σ terms approximates the value for n = 1; the bare sum
// Σ (1-h((2k+1)^α δ)) s_k / (2k+1)^{r+1} is Σ terms alone.
struct Expansion {
    double prefactor = 1.0;
    std::vector<ExpansionTerm> terms;
    int truncation_order = 0;
    std::optional<std::pair<double, double>> equality_region;
};

Expansion abel_expansion(double r, double alpha, int order);
Expansion abel_alternating_expansion(double r, double alpha, int order);
Expansion inverse_power_expansion(double r, double alpha, double mu, bool alternating, int order);

double evaluate_expansion(const Expansion& e, double delta);
// bare sum, without the prefactor
double evaluate_bare(const Expansion& e, double delta);

}  // namespace wclass
