// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.
// Usage: acceptance [--out DIR]   (DIR receives every report and table)

#include "oracles.hpp"

#include "gtrans/errors.hpp"
#include "gtrans/spectral.hpp"
#include "gtrans/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#ifndef GTRANS_CLI_PATH
#define GTRANS_CLI_PATH "gtrans"
#endif

using namespace gtrans;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Criterion {
    bool passed = true;
    std::string note; // first failure, or a summary when all is well

    void require(bool ok, const std::string& why)
    {
        if (!ok && passed) {
            passed = false;
            note = why;
        }
    }
};

std::vector<VerificationReport> all_reports;
std::vector<Table> all_tables;
int failures = 0;

void keep(const ExperimentOutput& e)
{
    all_reports.insert(all_reports.end(), e.reports.begin(), e.reports.end());
    all_tables.insert(all_tables.end(), e.tables.begin(), e.tables.end());
}

void print(int id, const std::string& title, const Criterion& c, double secs)
{
    if (!c.passed)
        ++failures;
    std::cout << (c.passed ? "PASS" : "FAIL") << "  " << id << ". " << title << " [" << fmt(secs) << " s]";
    if (!c.note.empty())
        std::cout << ": " << c.note;
    std::cout << std::endl;
}

bool starts_with(const std::string& s, const std::string& prefix)
{
    return s.rfind(prefix, 0) == 0;
}

// Every report whose name starts with one of the prefixes must be as expected.
void require_reports(Criterion& c, const std::vector<VerificationReport>& rs,
                     std::initializer_list<const char*> prefixes, int* count = nullptr)
{
    int n = 0;
    for (const auto& r : rs)
        for (const char* p : prefixes)
            if (starts_with(r.name, p)) {
                ++n;
                c.require(r.as_expected(), r.name + " deviation " + fmt(r.max_deviation) + " > " + fmt(r.tolerance));
            }
    c.require(n > 0, "no reports found");
    if (count)
        *count = n;
}

CorpusFunction corpus_member(int which, double mu)
{
    CorpusParams p;
    p.mu = mu;
    switch (which) {
    case 0:
        p.gamma = 1.0;
        return corpus("abs_power", p);
    case 1:
        p.s = 1.0;
        return corpus("bump", p);
    default:
        p.s = 1.5;
        return corpus("jacobi_series", p);
    }
}

std::vector<SpaceParams> spaces_for(double mu)
{
    return {{Exponent::infinity(), mu / 2, mu}, {Exponent::finite(1.0), mu / 2, mu}};
}

} // namespace

int main(int argc, char** argv)
{
    std::string out_dir;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--out" && i + 1 < argc)
            out_dir = argv[++i];
        else {
            std::cerr << "usage: acceptance [--out DIR]\n";
            return 2;
        }
    }

    try {
        kernel_self_test();

        // 1-3 and the identity-suite controls share one run of the suite.
        auto t0 = Clock::now();
        IdentitySuiteConfig ids; // mu in {0.5, 1, 2, 3}, n <= 20, 41 x 41
        const auto suite = verify_translation_identities(ids);
        const double suite_secs = seconds_since(t0);
        all_reports.insert(all_reports.end(), suite.begin(), suite.end());

        {
            Criterion c;
            int n = 0;
            require_reports(c, suite, {"normalization", "eigenfunction", "duality", "transport"}, &n);
            c.require(suite_secs <= 60.0, "runtime " + fmt(suite_secs) + " s > 60 s");
            if (c.passed)
                c.note = std::to_string(n) + " reports";
            print(1, "translation identity suite", c, suite_secs);
        }

        {
            t0 = Clock::now();
            Criterion c;
            require_reports(c, suite, {"closed_form_identity", "closed_form_modulus"});
            // direct check of tau_t(id) = x (2 cos t - 1) for mu = 1
            double dev = 0.0;
            const FunctionHandle id = FunctionHandle::identity();
            for (double x : identity_x_grid(41))
                for (double t : identity_t_grid(41, ids.t_max))
                    dev = std::max(dev, std::abs(asym_translate(id, t, 1.0, x) - x * (2 * std::cos(t) - 1)));
            c.require(dev <= 1e-10, "direct closed form deviation " + fmt(dev));
            double mdev = 0.0;
            for (double d : {0.1, 0.5, 1.0, 2.0}) {
                const double s = std::sin(d / 2);
                mdev = std::max(mdev, std::abs(modulus(id, d, {Exponent::infinity(), 0.5, 1.0}).value - 2 * s * s));
            }
            c.require(mdev <= 1e-7, "modulus deviation " + fmt(mdev));
            if (c.passed)
                c.note = "max deviations " + fmt(dev) + " (identity), " + fmt(mdev) + " (modulus)";
            print(2, "closed form for mu = 1", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            require_reports(c, suite, {"eigenvalue_coeffs", "eigenvalue_pointwise"});
            // the eigenvalue against -n(n + 2mu + 1) written out here
            double worst = 0.0;
            for (double mu : ids.mus)
                for (int n = 0; n <= ids.n_max; ++n)
                    worst = std::max(worst, std::abs(sl_eigenvalue(n, {mu, mu}) + n * (n + 2 * mu + 1)));
            c.require(worst <= 1e-12, "eigenvalue formula deviation " + fmt(worst));
            print(3, "Sturm-Liouville eigenvalues", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            std::mt19937_64 rng(2024);
            double worst = 0.0;
            for (double mu : {1.0, 2.0})
                for (int deg = 1; deg <= 6; ++deg) {
                    const auto r = verify_commutation(mu, random_polynomial(deg, mu, rng));
                    all_reports.push_back(r);
                    worst = std::max(worst, r.max_deviation);
                    c.require(r.passed, r.name + " deviation " + fmt(r.max_deviation));
                }
            if (c.passed)
                c.note = "max deviation " + fmt(worst);
            print(4, "commutation with D", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            std::mt19937_64 rng(4048);
            double worst = 0.0;
            for (double mu : {1.0, 2.0})
                for (int deg = 1; deg <= 4; ++deg) {
                    const PolynomialCoeffs f = random_polynomial(deg, mu, rng);
                    for (double y : {-0.5, 0.0, 0.5, 0.9})
                        for (const auto& r : verify_integral_identity(f, y, mu)) {
                            all_reports.push_back(r);
                            worst = std::max(worst, r.max_deviation);
                            c.require(r.passed, r.name + " deviation " + fmt(r.max_deviation));
                        }
                }
            if (c.passed)
                c.note = "max deviation " + fmt(worst);
            print(5, "integral representations", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            const FunctionHandle sq = FunctionHandle([](double x) { return x * x; }, "x^2");
            const BestApproxResult e2 = best_approx(sq, 2, {Exponent::infinity(), 0.0, 0.0});
            c.require(std::abs(e2.value - 0.5) <= 1e-6, "E_2(x^2) = " + fmt(e2.value));
            // certificate: three points where the error alternates at level E_2
            const auto residual = [&](double x) { return sq(x) - e2.coeffs(x); };
            int alternations = 0;
            double prev = 0.0;
            for (double x : e2.alternation) {
                const double r = residual(x);
                if (std::abs(std::abs(r) - 0.5) <= 1e-6 && (alternations == 0 || r * prev < 0)) {
                    ++alternations;
                    prev = r;
                }
            }
            c.require(alternations >= 3, "only " + std::to_string(alternations) + " alternation points");

            // E_1(x)_{1,0}: the best constant by brute-force scan
            const FunctionHandle id = FunctionHandle::identity();
            const BestApproxResult e1 = best_approx(id, 1, {Exponent::finite(1.0), 0.0, 0.0});
            double scan = std::numeric_limits<double>::infinity();
            for (int i = -200; i <= 200; ++i) {
                const double cst = i / 200.0;
                const double kink = std::clamp(cst, -1.0, 1.0);
                const auto g = [cst](double x) { return std::abs(x - cst); };
                scan = std::min(scan, oracle::simpson(g, -1.0, kink, 200) + oracle::simpson(g, kink, 1.0, 200));
            }
            c.require(std::abs(e1.value - 1.0) <= 1e-4, "E_1(x)_{1,0} = " + fmt(e1.value));
            c.require(std::abs(e1.value - scan) <= 1e-4, "scan oracle " + fmt(scan) + " vs " + fmt(e1.value));

            // polynomials of degree n - 1 are their own best approximants
            std::mt19937_64 rng(99);
            double worst = 0.0;
            for (double mu : {1.0, 2.0})
                for (int n : {1, 3, 6})
                    for (const auto& sp : spaces_for(mu)) {
                        const FunctionHandle p = FunctionHandle::polynomial(random_polynomial(n - 1, mu, rng));
                        worst = std::max(worst, best_approx(p, n, sp).value);
                    }
            c.require(worst <= 1e-9, "E_n of an in-space polynomial = " + fmt(worst));
            if (c.passed)
                c.note = "E_2(x^2) = " + fmt(e2.value) + ", E_1(x) = " + fmt(e1.value) + ", polynomial E_n <= " +
                         fmt(worst);
            print(6, "best approximation", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            CorpusParams bp;
            bp.s = 2.0;
            const auto out = verify_jackson_operator(corpus("bump", bp), {Exponent::infinity(), 0.5, 1.0});
            keep(out);
            for (const auto& r : out.reports)
                c.require(r.passed, r.name + ": " + r.detail);
            const auto& rows = out.tables.at(0).rows;
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& row : rows) {
                lo = std::min(lo, row[4]);
                hi = std::max(hi, row[4]);
            }
            c.require(hi < 4 * lo, "error n^2 spread " + fmt(hi / lo));
            if (c.passed)
                c.note = "error n^2 in [" + fmt(lo) + ", " + fmt(hi) + "]";
            print(7, "Jackson operator", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            for (double mu : {1.0, 2.0}) {
                const auto out = verify_markov(Exponent::infinity(), mu / 2, mu);
                keep(out);
                for (const auto& r : out.reports)
                    c.require(r.passed, r.name + " mu=" + fmt(mu) + " max ratio change in [" + fmt(r.ratio_min) +
                                            ", " + fmt(r.ratio_max) + "]");
            }
            print(8, "Markov-Bernstein boundedness", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            double worst = 0.0;
            for (double mu : {1.0, 2.0})
                for (int which = 0; which < 3; ++which)
                    for (const auto& sp : spaces_for(mu)) {
                        const auto out = run_equivalence_experiment(corpus_member(which, mu), sp);
                        keep(out);
                        for (const auto& r : out.reports) {
                            worst = std::max(worst, r.ratio_max / r.ratio_min);
                            c.require(r.passed, r.name + " spread " + fmt(r.ratio_max / r.ratio_min));
                        }
                    }
            if (c.passed)
                c.note = "largest spread " + fmt(worst);
            print(9, "modulus and K-functional equivalence", c, seconds_since(t0));
        }

        {
            t0 = Clock::now();
            Criterion c;
            for (double mu : {1.0, 2.0})
                for (int which = 0; which < 3; ++which)
                    for (const auto& sp : spaces_for(mu)) {
                        JacksonExperimentConfig cfg;
                        cfg.rate_check = which == 1;
                        const auto out = run_jackson_experiment(corpus_member(which, mu), sp, cfg);
                        keep(out);
                        for (const auto& r : out.reports)
                            c.require(r.passed, r.name + " ratios [" + fmt(r.ratio_min) + ", " + fmt(r.ratio_max) + "]");
                    }
            const double secs = seconds_since(t0);
            c.require(secs <= 300.0, "runtime " + fmt(secs) + " s > 300 s");
            print(10, "direct and inverse Jackson theorems", c, secs);
        }

        {
            t0 = Clock::now();
            Criterion c;
            int controls = 0;
            for (const auto& r : suite)
                if (r.control) {
                    ++controls;
                    c.require(!r.passed, r.name + " passed but must fail");
                }
            c.require(controls >= 2, "controls missing from the identity suite");
            std::mt19937_64 rng(5);
            CommutationConfig cc;
            cc.control = true;
            c.require(!verify_commutation(1.0, random_polynomial(6, 1.0, rng), cc).passed, "commutation control passed");
            IntegralIdentityConfig ic;
            ic.control = true;
            for (const auto& r : verify_integral_identity(random_polynomial(4, 1.0, rng), 0.5, 1.0, ic))
                c.require(!r.passed, r.name + " passed but must fail");

            VerificationReport ok, bad;
            ok.passed = true;
            bad.control = true;
            bad.passed = true;
            c.require(exit_code({ok}) == 0 && exit_code({ok, bad}) != 0, "exit_code ignores a passing control");

            const std::string cli = std::string("\"") + GTRANS_CLI_PATH + "\" verify lemma1 --mu 1 --quiet";
            const int good = std::system((cli + " > /dev/null 2>&1").c_str());
            const int strict = std::system((cli + " --tol 1e-30 > /dev/null 2>&1").c_str());
            c.require(good == 0, "CLI run exited with status " + std::to_string(good));
            c.require(strict != 0, "CLI run with --tol 1e-30 exited 0");
            if (c.passed)
                c.note = std::to_string(controls + 5) + " controls fail, CLI exit codes 0 and nonzero";
            print(11, "negative controls and exit codes", c, seconds_since(t0));
        }

        if (!out_dir.empty())
            report_emit(all_reports, all_tables, "csv", out_dir);
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance aborted: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
