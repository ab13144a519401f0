#include "gtrans/errors.hpp"
#include "gtrans/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace gtrans;

namespace {

struct Options {
    std::vector<double> mu;
    std::string p = "inf";
    double alpha = std::numeric_limits<double>::quiet_NaN(); // NaN: mu/2
    int n_max = 0;                                           // 0: command default
    std::vector<double> delta_grid;
    double tol = std::numeric_limits<double>::quiet_NaN(); // NaN: per-check defaults
    std::string out;
    std::string format = "csv";
    unsigned long seed = 1;
    bool quiet = false;

    // function selection
    std::string function;
    double gamma = 1.0;
    double s = 1.0;
    int terms = 16;
    std::vector<double> coeffs;
    std::string csv;

    // command specific
    std::vector<double> xs;
    double t = 0.5;
    bool symmetric = false;
    bool rate_check = false;
    int draws = 200;
    double rho = 0.5;
    std::vector<int> degrees{8, 16, 32};
};

std::string fmt(double v)
{
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

std::string short_fmt(double v)
{
    std::ostringstream o;
    o << v;
    return o.str();
}

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt(v[i]);
    return s;
}

double first_mu(const Options& o)
{
    return o.mu.empty() ? 1.0 : o.mu.front();
}

SpaceParams space_of(const Options& o)
{
    const double mu = first_mu(o);
    return {Exponent::parse(o.p), std::isnan(o.alpha) ? mu / 2.0 : o.alpha, mu};
}

CorpusFunction function_of(const Options& o, const std::string& fallback)
{
    CorpusParams cp;
    cp.gamma = o.gamma;
    cp.s = o.s;
    cp.terms = o.terms;
    cp.mu = first_mu(o);
    cp.coeffs = o.coeffs;
    cp.csv_path = o.csv;
    return corpus(o.function.empty() ? fallback : o.function, cp);
}

std::vector<std::pair<std::string, std::string>> echo(const Options& o, const std::string& command)
{
    std::vector<std::pair<std::string, std::string>> c{
        {"command", command},
        {"mu", join(o.mu)},
        {"p", o.p},
        {"alpha", std::isnan(o.alpha) ? "mu/2" : fmt(o.alpha)},
        {"n_max", std::to_string(o.n_max)},
        {"delta_grid", join(o.delta_grid)},
        {"tol", std::isnan(o.tol) ? "default" : fmt(o.tol)},
        {"seed", std::to_string(o.seed)},
        {"format", o.format},
    };
    if (!o.function.empty()) {
        c.emplace_back("function", o.function);
        c.emplace_back("gamma", fmt(o.gamma));
        c.emplace_back("s", fmt(o.s));
        c.emplace_back("terms", std::to_string(o.terms));
    }
    return c;
}

void print_table(const Table& t)
{
    std::printf("# %s\n", t.name.c_str());
    for (const auto& c : t.columns)
        std::printf("%16s", c.c_str());
    std::printf("\n");
    for (const auto& row : t.rows) {
        for (double v : row)
            std::printf("%16.9g", v);
        std::printf("\n");
    }
}

void print_report(const VerificationReport& r)
{
    const char* status = r.as_expected() ? (r.control ? "FAIL (control, expected)" : "PASS")
                                         : (r.control ? "PASS (control, unexpected)" : "FAIL");
    if (r.kind == "identity")
        std::printf("%-26s %s  dev=%.3g tol=%.3g  [%.2fs]\n", status, r.name.c_str(), r.max_deviation, r.tolerance,
                    r.runtime_seconds);
    else
        std::printf("%-26s %s  ratio=[%.4g, %.4g] limit=%.4g  [%.2fs]\n", status, r.name.c_str(), r.ratio_min,
                    r.ratio_max, r.spread_limit, r.runtime_seconds);
}

int finish(const Options& o, const std::string& command, const ExperimentOutput& out)
{
    if (!o.quiet)
        for (const auto& t : out.tables)
            print_table(t);
    for (const auto& r : out.reports)
        print_report(r);
    if (!o.out.empty())
        report_emit(out.reports, out.tables, o.format, o.out, echo(o, command));
    const int code = exit_code(out.reports);
    std::printf("%s: %s\n", command.c_str(), code == 0 ? "ok" : "checks failed");
    return code;
}

// ---- commands --------------------------------------------------------------

int cmd_lemma1(const Options& o)
{
    IdentitySuiteConfig cfg;
    if (!o.mu.empty())
        cfg.mus = o.mu;
    if (o.n_max > 0)
        cfg.n_max = o.n_max;
    cfg.seed = o.seed;
    if (!std::isnan(o.tol)) {
        cfg.tol_normalization = cfg.tol_eigen = cfg.tol_duality = cfg.tol_transport = o.tol;
        cfg.tol_closed_form = cfg.tol_eigenvalue_coeffs = cfg.tol_eigenvalue_pointwise = cfg.tol_modulus = o.tol;
    }
    ExperimentOutput out;
    out.reports = verify_translation_identities(cfg);
    return finish(o, "verify lemma1", out);
}

int cmd_commutation(const Options& o)
{
    CommutationConfig cfg;
    if (!std::isnan(o.tol))
        cfg.tolerance = o.tol;
    std::mt19937_64 rng(o.seed);
    const std::vector<double> mus = o.mu.empty() ? std::vector<double>{1.0, 2.0} : o.mu;
    const int degree = o.n_max > 0 ? o.n_max : 6;
    ExperimentOutput out;
    for (double mu : mus)
        for (int k = 0; k < 3; ++k)
            out.reports.push_back(verify_commutation(mu, random_polynomial(degree, mu, rng), cfg));
    CommutationConfig control = cfg;
    control.control = true;
    out.reports.push_back(verify_commutation(mus.front(), random_polynomial(degree, mus.front(), rng), control));
    return finish(o, "verify commutation", out);
}

int cmd_integral(const Options& o)
{
    IntegralIdentityConfig cfg;
    if (!std::isnan(o.tol))
        cfg.tolerance = o.tol;
    std::mt19937_64 rng(o.seed);
    const std::vector<double> mus = o.mu.empty() ? std::vector<double>{1.0, 2.0} : o.mu;
    const std::vector<double> ys = o.xs.empty() ? std::vector<double>{-0.5, 0.0, 0.5, 0.9} : o.xs;
    const int degree = o.n_max > 0 ? o.n_max : 4;
    ExperimentOutput out;
    for (double mu : mus)
        for (double y : ys) {
            const auto rs = verify_integral_identity(random_polynomial(degree, mu, rng), y, mu, cfg);
            out.reports.insert(out.reports.end(), rs.begin(), rs.end());
        }
    IntegralIdentityConfig control = cfg;
    control.control = true;
    const auto rs = verify_integral_identity(random_polynomial(degree, mus.front(), rng), ys.front(), mus.front(), control);
    out.reports.insert(out.reports.end(), rs.begin(), rs.end());
    return finish(o, "verify integral", out);
}

int cmd_markov(const Options& o)
{
    MarkovConfig cfg;
    cfg.seed = o.seed;
    cfg.draws = o.draws;
    cfg.rho = o.rho;
    cfg.degrees = o.degrees;
    const SpaceParams sp = space_of(o);
    return finish(o, "verify markov", verify_markov(sp.p, sp.alpha, sp.mu, cfg));
}

int cmd_jackson(const Options& o)
{
    JacksonExperimentConfig cfg;
    for (int n = 2; n <= (o.n_max > 0 ? o.n_max : 64); ++n)
        cfg.ns.push_back(n);
    cfg.rate_check = o.rate_check;
    return finish(o, "experiment jackson", run_jackson_experiment(function_of(o, "abs_power"), space_of(o), cfg));
}

int cmd_equivalence(const Options& o)
{
    EquivalenceExperimentConfig cfg;
    cfg.deltas = o.delta_grid;
    return finish(o, "experiment equivalence",
                  run_equivalence_experiment(function_of(o, "abs_power"), space_of(o), cfg));
}

int cmd_translate(const Options& o)
{
    const CorpusFunction f = function_of(o, "abs_power");
    const double mu = first_mu(o);
    std::vector<double> xs = o.xs;
    if (xs.empty())
        for (int i = 0; i <= 20; ++i)
            xs.push_back(-1.0 + 0.1 * i);
    Table t;
    t.name = std::string(o.symmetric ? "sym_translate " : "translate ") + f.description + " mu=" + short_fmt(mu) +
             (o.symmetric ? " y=" : " t=") + short_fmt(o.t);
    t.columns = {"x", "f", o.symmetric ? "T_y_f" : "tau_t_f"};
    for (double x : xs)
        t.rows.push_back({x, f.handle(x), o.symmetric ? sym_translate(f.handle, o.t, mu, x) : asym_translate(f.handle, o.t, mu, x)});
    ExperimentOutput out;
    out.tables.push_back(std::move(t));
    return finish(o, "translate", out);
}

int cmd_modulus(const Options& o)
{
    const CorpusFunction f = function_of(o, "abs_power");
    const SpaceParams sp = space_of(o);
    std::vector<double> deltas = o.delta_grid;
    if (deltas.empty())
        for (int k = 1; k <= 8; ++k)
            deltas.push_back(std::numbers::pi / std::ldexp(1.0, k));
    Table t;
    t.name = "modulus " + f.description + " p=" + sp.p.to_string() + " alpha=" + short_fmt(sp.alpha) + " mu=" + short_fmt(sp.mu);
    t.columns = {"delta", "omega", "argmax_t"};
    for (double d : deltas) {
        const ModulusResult m = modulus(f.handle, d, sp);
        t.rows.push_back({d, m.value, m.argmax_t});
    }
    ExperimentOutput out;
    out.tables.push_back(std::move(t));
    return finish(o, "modulus", out);
}

int cmd_bestapprox(const Options& o)
{
    const CorpusFunction f = function_of(o, "abs_power");
    const SpaceParams sp = space_of(o);
    const BestApproxSequence seq = best_approx_sequence(f.handle, o.n_max > 0 ? o.n_max : 16, sp);
    Table t;
    t.name = "bestapprox " + f.description + " p=" + sp.p.to_string() + " alpha=" + short_fmt(sp.alpha) + " mu=" + short_fmt(sp.mu);
    t.columns = {"n", "E_n", "error_estimate", "S"};
    for (std::size_t i = 0; i < seq.results.size(); ++i)
        t.rows.push_back({static_cast<double>(i + 1), seq.values[i], seq.results[i].error_estimate, seq.weighted_sums[i]});
    for (const auto& r : seq.results)
        for (const auto& w : r.warnings)
            std::fprintf(stderr, "warning (n=%d): %s\n", r.n, w.c_str());
    ExperimentOutput out;
    out.tables.push_back(std::move(t));
    return finish(o, "bestapprox", out);
}

int cmd_corpus_list()
{
    for (const auto& [name, text] : corpus_catalog())
        std::printf("%-14s %s\n", name.c_str(), text.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized translation operators: identity checks and approximation experiments"};
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--mu", o.mu, "translation parameter(s) mu >= 0")->delimiter(',');
    app.add_option("--p", o.p, "integrability exponent: a number >= 1 or inf");
    app.add_option("--alpha", o.alpha, "weight exponent (default mu/2)");
    app.add_option("--n-max", o.n_max, "largest n (degree for random polynomials in commutation/integral)");
    app.add_option("--delta-grid", o.delta_grid, "delta values, comma separated")->delimiter(',');
    app.add_option("--tol", o.tol, "override the tolerance of every identity check");
    app.add_option("--out", o.out, "directory for tables and summary.json");
    app.add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", o.seed, "random seed");
    app.add_flag("--quiet", o.quiet, "do not print tables");
    app.add_option("--function", o.function, "corpus family (see corpus list)");
    app.add_option("--gamma", o.gamma, "abs_power exponent");
    app.add_option("--s", o.s, "bump exponent or jacobi_series decay");
    app.add_option("--terms", o.terms, "jacobi_series K");
    app.add_option("--coeffs", o.coeffs, "poly coefficients in the (mu,mu) basis")->delimiter(',');
    app.add_option("--csv", o.csv, "user_csv file (two columns x,value)");

    auto* verify = app.add_subcommand("verify", "identity and inequality checks");
    verify->require_subcommand(1);
    auto* lemma1 = verify->add_subcommand("lemma1", "translation identity suite with negative controls");
    auto* commutation = verify->add_subcommand("commutation", "tau(Df) = D_x tau f = D_y tau f");
    auto* integral = verify->add_subcommand("integral", "double-integral representations");
    integral->add_option("--y", o.xs, "y values, comma separated")->delimiter(',');
    auto* markov = verify->add_subcommand("markov", "Markov-Bernstein ratios on random polynomials");
    markov->add_option("--draws", o.draws, "polynomials per degree");
    markov->add_option("--rho", o.rho, "rho in the second inequality");
    markov->add_option("--degrees", o.degrees, "degrees, comma separated")->delimiter(',');

    auto* experiment = app.add_subcommand("experiment", "Jackson and omega ~ K experiments");
    experiment->require_subcommand(1);
    auto* jackson = experiment->add_subcommand("jackson", "E_n, omega(f,1/n) and S(n) for n = 2..n-max");
    jackson->add_flag("--rate-check", o.rate_check, "also require omega(f,1/n) n^2 to stay within a factor 4");
    auto* equivalence = experiment->add_subcommand("equivalence", "omega(f,delta) / K(f,delta) over the delta grid");

    auto* translate = app.add_subcommand("translate", "tau_t(f, x) (or T_y with --symmetric) on an x grid");
    translate->add_option("--t", o.t, "shift t (or y with --symmetric)");
    translate->add_option("--x", o.xs, "x values, comma separated")->delimiter(',');
    translate->add_flag("--symmetric", o.symmetric, "use the symmetric operator T_y");
    auto* mod = app.add_subcommand("modulus", "omega(f, delta) over the delta grid");
    auto* best = app.add_subcommand("bestapprox", "E_1..E_{n-max}");
    auto* corpus_cmd = app.add_subcommand("corpus", "function corpus");
    corpus_cmd->require_subcommand(1);
    auto* list = corpus_cmd->add_subcommand("list", "list the corpus families");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list)
            return cmd_corpus_list();
        kernel_self_test();
        if (*lemma1)
            return cmd_lemma1(o);
        if (*commutation)
            return cmd_commutation(o);
        if (*integral)
            return cmd_integral(o);
        if (*markov)
            return cmd_markov(o);
        if (*jackson)
            return cmd_jackson(o);
        if (*equivalence)
            return cmd_equivalence(o);
        if (*translate)
            return cmd_translate(o);
        if (*mod)
            return cmd_modulus(o);
        if (*best)
            return cmd_bestapprox(o);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
