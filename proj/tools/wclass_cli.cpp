#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wclass/asymptotics.hpp"
#include "wclass/oracle.hpp"
#include "wclass/series_engine.hpp"

using json = nlohmann::ordered_json;
using namespace wclass;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string family = "exp";
    double mu = 1.0;
    std::string q_terms = "1:1";
    double u = 1.0;
    double r = 1.0;
    int beta = 1;
    int n = 1;
    std::string p = "1";
    double alpha = 1.0;
    std::optional<double> delta;
    double gamma = 0.0;
    double rho = 1.0;
    double tol = 1e-10;
    int grid = 8192;
    std::string format = "text";
    std::string output;
    long m = 0;
    double cesaro_alpha = 1.0;
    std::optional<double> mix_gamma;
    bool alternating = false;
    int order = 6;
    std::string mode;
    std::optional<double> indicator;
    std::vector<std::string> sweeps;
};

std::string num(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::vector<std::pair<double, double>> parse_q_terms(const std::string& s) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw usage_error("--q-terms expects a:mu pairs");
        try {
            out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw usage_error("--q-terms: malformed number in '" + item + "'");
        }
    }
    if (out.empty()) throw usage_error("--q-terms is empty");
    return out;
}

MultiplierFamily make_family(const Config& cfg) {
    if (cfg.family == "exp") return Exp{};
    if (cfg.family == "invpow") return InversePower{cfg.mu};
    if (cfg.family == "riesz") return RieszCutoff{cfg.mu};
    if (cfg.family == "q") return QPolynomial{parse_q_terms(cfg.q_terms), cfg.u};
    throw usage_error("unknown family '" + cfg.family + "'");
}

ClassParams class_params(const Config& cfg) {
    ClassParams c{cfg.r, cfg.beta, cfg.n, Norm::one};
    if (cfg.p == "inf") c.p = Norm::infinity;
    else if (cfg.p != "1") throw usage_error("--p must be 1 or inf");
    return c;
}

double need_delta(const Config& cfg) {
    if (!cfg.delta) throw usage_error("--delta is required");
    return *cfg.delta;
}

OperatorParams operator_params(const Config& cfg) {
    return {cfg.alpha, need_delta(cfg), cfg.gamma, cfg.rho};
}

json params_json(const Config& cfg) {
    json p;
    p["family"] = cfg.family;
    if (cfg.family == "invpow" || cfg.family == "riesz") p["mu"] = cfg.mu;
    if (cfg.family == "q") {
        p["q_terms"] = cfg.q_terms;
        p["u"] = cfg.u;
    }
    if (cfg.family == "cesaro") {
        p["m"] = cfg.m;
        p["cesaro_alpha"] = cfg.cesaro_alpha;
    }
    p["r"] = cfg.r;
    p["beta"] = cfg.beta;
    p["n"] = cfg.n;
    p["p"] = cfg.p;
    if (cfg.family != "cesaro") {
        p["alpha"] = cfg.alpha;
        if (cfg.delta) p["delta"] = *cfg.delta;
        p["gamma"] = cfg.gamma;
        p["rho"] = cfg.rho;
    }
    p["tol"] = cfg.tol;
    return p;
}

ApproximationResult compute(const Config& cfg) {
    const auto c = class_params(cfg);
    if (cfg.family == "cesaro") return cesaro_value(c, cfg.m, cfg.cesaro_alpha, cfg.tol);
    if (cfg.family == "q") {
        // x_k = (2k+1)^α δ with δ = 1/u
        const auto terms = parse_q_terms(cfg.q_terms);
        if (cfg.delta) return q_means_value(c, terms, cfg.alpha, QForm::unit, *cfg.delta, cfg.tol);
        return q_means_value(c, terms, cfg.alpha, QForm::u, cfg.u, cfg.tol);
    }
    return approx_value(c, operator_params(cfg), make_family(cfg), cfg.tol);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw usage_error("cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_value(const Config& cfg) {
    const auto res = compute(cfg);
    Output o(cfg.output);
    auto& os = o.out();
    if (cfg.format == "json") {
        json j;
        j["params"] = params_json(cfg);
        j["value"] = res.value;
        j["tail_bound"] = res.tail_bound;
        j["terms_used"] = res.terms_used;
        j["justification"] = res.justification;
        j["warnings"] = res.warnings;
        os << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        os << "value,tail_bound,terms_used,justification\n";
        os << num(res.value, 17) << "," << num(res.tail_bound, 17) << "," << res.terms_used << ","
           << res.justification << "\n";
    } else {
        os << "value          " << num(res.value, 10) << "\n";
        os << "tail_bound     " << num(res.tail_bound, 10) << "\n";
        os << "terms_used     " << res.terms_used << "\n";
        os << "justification  " << res.justification << "\n";
        for (const auto& w : res.warnings) os << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_cesaro(const Config& cfg) {
    const auto c = class_params(cfg);
    Output o(cfg.output);
    auto& os = o.out();
    const auto res = cesaro_value(c, cfg.m, cfg.cesaro_alpha, cfg.tol);
    std::optional<MixingSides> mix;
    if (cfg.mix_gamma) mix = cesaro_mixing_identity(c, cfg.m, cfg.cesaro_alpha, *cfg.mix_gamma, cfg.tol);
    if (cfg.format == "json") {
        json j;
        Config shown = cfg;
        shown.family = "cesaro";
        j["params"] = params_json(shown);
        j["value"] = res.value;
        j["tail_bound"] = res.tail_bound;
        j["terms_used"] = res.terms_used;
        j["justification"] = res.justification;
        j["warnings"] = res.warnings;
        if (mix) j["mixing"] = {{"gamma", *cfg.mix_gamma}, {"lhs", mix->lhs}, {"rhs", mix->rhs}};
        os << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        os << "m,value,justification\n" << cfg.m << "," << num(res.value, 17) << "," << res.justification << "\n";
    } else {
        os << "value          " << num(res.value, 10) << "\n";
        os << "(m+1)*value    " << num((cfg.m + 1) * res.value, 10) << "\n";
        os << "justification  " << res.justification << "\n";
        if (mix) os << "mixing lhs     " << num(mix->lhs, 10) << "\nmixing rhs     " << num(mix->rhs, 10) << "\n";
        for (const auto& w : res.warnings) os << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_asymptote(const Config& cfg) {
    Expansion e;
    if (cfg.family == "exp")
        e = cfg.alternating ? abel_alternating_expansion(cfg.r, cfg.alpha, cfg.order)
                            : abel_expansion(cfg.r, cfg.alpha, cfg.order);
    else if (cfg.family == "invpow")
        e = inverse_power_expansion(cfg.r, cfg.alpha, cfg.mu, cfg.alternating, cfg.order);
    else
        throw usage_error("asymptote supports --family exp or invpow");
    Output o(cfg.output);
    auto& os = o.out();
    const int digits = cfg.format == "text" ? 10 : 17;
    if (cfg.format == "json") {
        json j;
        j["prefactor"] = e.prefactor;
        j["truncation_order"] = e.truncation_order;
        j["terms"] = json::array();
        for (const auto& t : e.terms)
            j["terms"].push_back({{"exponent", t.exponent},
                                  {"has_log", t.has_log},
                                  {"coefficient", t.coefficient},
                                  {"log_coefficient", t.log_coefficient}});
        if (e.equality_region)
            j["equality_region"] = {e.equality_region->first,
                                    std::isinf(e.equality_region->second)
                                        ? json("inf")
                                        : json(e.equality_region->second)};
        else
            j["equality_region"] = nullptr;
        if (cfg.delta) j["value_at_delta"] = evaluate_expansion(e, *cfg.delta);
        os << j.dump(2) << "\n";
    } else {
        if (cfg.format == "csv") os << "exponent,has_log,coefficient,log_coefficient\n";
        for (const auto& t : e.terms) {
            if (cfg.format == "csv")
                os << num(t.exponent, digits) << "," << t.has_log << "," << num(t.coefficient, digits)
                   << "," << num(t.log_coefficient, digits) << "\n";
            else
                os << "delta^" << num(t.exponent, digits) << "  " << num(t.coefficient, digits)
                   << (t.has_log ? "  + ln(delta) * " + num(t.log_coefficient, digits) : "") << "\n";
        }
        if (cfg.format == "text") {
            os << "prefactor  " << num(e.prefactor, digits) << "\n";
            if (cfg.delta) os << "value      " << num(evaluate_expansion(e, *cfg.delta), digits) << "\n";
        }
    }
    return 0;
}

int cmd_verify(const Config& cfg) {
    Output o(cfg.output);
    auto& os = o.out();
    const double tol_ext = 5e-4, tol_lp = 5e-3;
    if (cfg.indicator) {
        const double h = *cfg.indicator;
        if (!(h > 0 && h < std::numbers::pi)) throw usage_error("--indicator must lie in (0, pi)");
        PeriodicSamples s{cfg.grid, std::vector<double>(cfg.grid)};
        for (int j = 0; j < cfg.grid; ++j) s.values[j] = std::fabs(s.t(j)) < h ? 1.0 : 0.0;
        const auto lp = l1_best_approx(s, cfg.n);
        const double err = lp.value - 2.0 * h;
        os << "E_n(indicator)  " << num(lp.value, 10) << "\n2h              " << num(2.0 * h, 10)
           << "\ndifference      " << num(err, 10) << "\n";
        return std::fabs(err) <= 4.0 * std::numbers::pi / cfg.grid ? 0 : 1;
    }
    const auto c = class_params(cfg);
    const auto op = operator_params(cfg);
    const auto f = make_family(cfg);
    const auto series = approx_value(c, op, f, cfg.tol);
    const auto spec = operator_kernel(c, op, f, 1.0 / (2.0 * std::numbers::pi));
    const auto samples = synthesize_kernel(spec, cfg.grid, 1e-7);
    SignMode mode = cfg.beta % 2 ? SignMode::sine : SignMode::cosine;
    if (cfg.mode == "sine") mode = SignMode::sine;
    else if (cfg.mode == "cosine") mode = SignMode::cosine;
    else if (!cfg.mode.empty()) throw usage_error("--mode must be sine or cosine");
    const auto lp = l1_best_approx(samples, c.n);
    std::vector<double> t_star{mode == SignMode::sine ? 0.0 : cosine_t_star(samples, c.n)};
    if (c.n > 1) t_star = lp.poly_coeffs;
    const auto sign = sign_condition_check(samples, c.n, mode, t_star);
    const double ext = sign.pass ? 2.0 * std::numbers::pi * extremal_value(samples, c.n, mode, t_star)
                                 : std::nan("");
    const bool ok = sign.pass && std::fabs(series.value - ext) <= tol_ext &&
                    std::fabs(series.value - lp.value) <= tol_lp;
    if (cfg.format == "json") {
        json j;
        j["params"] = params_json(cfg);
        j["series"] = series.value;
        j["extremal_2pi"] = sign.pass ? json(ext) : json(nullptr);
        j["lp"] = lp.value;
        j["sign_condition_min"] = sign.min_value;
        j["sign_condition_pass"] = sign.pass;
        j["justification"] = series.justification;
        j["pass"] = ok;
        os << j.dump(2) << "\n";
    } else {
        os << "series           " << num(series.value, 10) << "\n";
        os << "2pi*extremal     " << (sign.pass ? num(ext, 10) : "n/a") << "\n";
        os << "lp               " << num(lp.value, 10) << "\n";
        os << "sign condition   " << (sign.pass ? "pass" : "fail") << " (min " << num(sign.min_value, 10) << ")\n";
        if (sign.pass) os << "series-extremal  " << num(series.value - ext, 10) << "\n";
        os << "series-lp        " << num(series.value - lp.value, 10) << "\n";
        os << "justification    " << series.justification << "\n";
        os << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

struct Range {
    std::string name;
    std::vector<double> points;
};

Range parse_range(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw usage_error("--sweep expects name=start:stop:count");
    Range r{s.substr(0, eq), {}};
    std::stringstream ss(s.substr(eq + 1));
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) )
        throw usage_error("malformed range '" + s + "'");
    double lo, hi;
    long count;
    try {
        std::size_t used = 0;
        lo = std::stod(a);
        hi = std::stod(b);
        count = std::stol(n, &used);
        if (used != n.size()) throw std::invalid_argument(n);
    } catch (const std::exception&) {
        throw usage_error("malformed range '" + s + "'");
    }
    if (count < 1) throw usage_error("empty range '" + s + "'");
    for (long i = 0; i < count; ++i)
        r.points.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return r;
}

void assign(Config& cfg, const std::string& name, double v) {
    if (name == "delta") cfg.delta = v;
    else if (name == "alpha") cfg.alpha = v;
    else if (name == "r") cfg.r = v;
    else if (name == "gamma") cfg.gamma = v;
    else if (name == "mu") cfg.mu = v;
    else if (name == "u") cfg.u = v;
    else if (name == "rho") cfg.rho = v;
    else if (name == "m") cfg.m = std::lround(v);
    else if (name == "cesaro_alpha") cfg.cesaro_alpha = v;
    else throw usage_error("cannot sweep parameter '" + name + "'");
}

int cmd_sweep(const Config& cfg) {
    if (cfg.sweeps.empty() || cfg.sweeps.size() > 2) throw usage_error("sweep needs one or two --sweep ranges");
    std::vector<Range> ranges;
    for (const auto& s : cfg.sweeps) ranges.push_back(parse_range(s));
    if (ranges.size() == 1) ranges.push_back({"", {std::nan("")}});
    struct Row {
        double p1, p2;
        ApproximationResult res;
    };
    std::vector<Row> rows;
    for (double a : ranges[0].points) {
        for (double b : ranges[1].points) {
            Config point = cfg;
            assign(point, ranges[0].name, a);
            if (!ranges[1].name.empty()) assign(point, ranges[1].name, b);
            rows.push_back({a, b, compute(point)});
        }
    }
    Output o(cfg.output);
    auto& os = o.out();
    const bool two = !ranges[1].name.empty();
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            Config point = cfg;
            assign(point, ranges[0].name, row.p1);
            if (two) assign(point, ranges[1].name, row.p2);
            json j;
            j["params"] = params_json(point);
            j["value"] = row.res.value;
            j["tail_bound"] = row.res.tail_bound;
            j["terms_used"] = row.res.terms_used;
            j["justification"] = row.res.justification;
            j["warnings"] = row.res.warnings;
            arr.push_back(j);
        }
        os << arr.dump(2) << "\n";
        return 0;
    }
    const int digits = cfg.format == "text" ? 10 : 17;
    os << "param1,param2,value,tail_bound,justification\n";
    for (const auto& row : rows)
        os << num(row.p1, digits) << "," << (two ? num(row.p2, digits) : "") << ","
           << num(row.res.value, digits) << "," << num(row.res.tail_bound, digits) << ","
           << row.res.justification << "\n";
    return 0;
}

void add_class_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--r", cfg.r, "smoothness r > 0");
    sub->add_option("--beta", cfg.beta, "shift beta");
    sub->add_option("--n", cfg.n, "degree n >= 1");
    sub->add_option("--p", cfg.p, "norm: 1 or inf");
}

void add_operator_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--family", cfg.family, "exp, invpow, riesz, q");
    sub->add_option("--mu", cfg.mu, "family parameter mu");
    sub->add_option("--q-terms", cfg.q_terms, "Q coefficients as a:mu,a:mu");
    sub->add_option("--u", cfg.u, "Q-means parameter u");
    sub->add_option("--alpha", cfg.alpha, "exponent alpha > 0");
    sub->add_option("--delta", cfg.delta, "scale delta > 0");
    sub->add_option("--gamma", cfg.gamma, "gamma in (1 + gamma x) h(x)");
    sub->add_option("--rho", cfg.rho, "rho >= 1");
}

void add_output_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--tol", cfg.tol, "tail tolerance");
    sub->add_option("--format", cfg.format, "text, json, csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", cfg.output, "output path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation values of periodic function classes by convolution operators"};
    app.require_subcommand(1);
    Config cfg;

    auto* value = app.add_subcommand("value", "series value with applicability tag");
    add_class_options(value, cfg);
    add_operator_options(value, cfg);
    add_output_options(value, cfg);
    value->add_option("--m", cfg.m, "Cesaro index m (family cesaro)");
    value->add_option("--cesaro-alpha", cfg.cesaro_alpha, "Cesaro order (family cesaro)");

    auto* asym = app.add_subcommand("asymptote", "small-delta expansion coefficients");
    add_class_options(asym, cfg);
    add_operator_options(asym, cfg);
    add_output_options(asym, cfg);
    asym->add_flag("--alternating", cfg.alternating, "alternating series (even beta)");
    asym->add_option("--order", cfg.order, "highest integer power of delta");

    auto* verify = app.add_subcommand("verify", "three-way oracle agreement");
    add_class_options(verify, cfg);
    add_operator_options(verify, cfg);
    add_output_options(verify, cfg);
    verify->add_option("--N", cfg.grid, "grid size (power of two)");
    verify->add_option("--mode", cfg.mode, "sign pattern: sine or cosine");
    verify->add_option("--indicator", cfg.indicator, "indicator self-test with half-width h");

    auto* ces = app.add_subcommand("cesaro", "Cesaro means value and mixing identity");
    add_class_options(ces, cfg);
    add_output_options(ces, cfg);
    ces->add_option("--m", cfg.m, "index m >= 0")->required();
    ces->add_option("--alpha", cfg.cesaro_alpha, "Cesaro order >= 1");
    ces->add_option("--mix-gamma", cfg.mix_gamma, "check the mixing identity with this order");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV or JSON");
    add_class_options(sweep, cfg);
    add_operator_options(sweep, cfg);
    add_output_options(sweep, cfg);
    sweep->add_option("--m", cfg.m, "Cesaro index m (family cesaro)");
    sweep->add_option("--cesaro-alpha", cfg.cesaro_alpha, "Cesaro order (family cesaro)");
    sweep->add_option("--sweep", cfg.sweeps, "name=start:stop:count, at most two");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*value) return cmd_value(cfg);
        if (*asym) return cmd_asymptote(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*ces) return cmd_cesaro(cfg);
        if (*sweep) {
            if (cfg.format == "text") cfg.format = "csv";
            return cmd_sweep(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
