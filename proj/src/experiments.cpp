#include "gtrans/verify.hpp"

#include "gtrans/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace gtrans {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double elapsed(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v)
{
    std::ostringstream o;
    o << v;
    return o.str();
}

std::string space_tag(const CorpusFunction& f, const SpaceParams& s)
{
    return f.description + " p=" + s.p.to_string() + " alpha=" + num(s.alpha) + " mu=" + num(s.mu);
}

// Ratio with the zero-denominator sentinel.
double ratio(double num_, double den, double floor)
{
    return den > floor ? num_ / den : kNaN;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int count = 0;
    void add(double v)
    {
        if (std::isnan(v))
            return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++count;
    }
};

VerificationReport ratio_report(std::string name, std::string grid, const Range& r, double spread_limit)
{
    VerificationReport rep;
    rep.name = std::move(name);
    rep.kind = "inequality";
    rep.grid = std::move(grid);
    rep.spread_limit = spread_limit;
    if (r.count > 0) {
        rep.ratio_min = r.lo;
        rep.ratio_max = r.hi;
    }
    return rep;
}

std::vector<int> default_ns(const std::vector<int>& ns)
{
    if (!ns.empty())
        return ns;
    std::vector<int> out;
    for (int n = 2; n <= 64; ++n)
        out.push_back(n);
    return out;
}

} // namespace

ExperimentOutput run_jackson_experiment(const CorpusFunction& f, const SpaceParams& space,
                                        const JacksonExperimentConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> ns = default_ns(cfg.ns);
    for (int n : ns)
        if (n < 1)
            throw DomainError("run_jackson_experiment: n must be >= 1");
    const int n_max = *std::max_element(ns.begin(), ns.end());
    const BestApproxSequence seq = best_approx_sequence(f.handle, n_max, space, cfg.approx);
    const double floor = 1e-10 * std::max(1.0, weighted_norm(f.handle, space.p, space.alpha, cfg.approx.resolution));

    Table table;
    table.name = "jackson " + space_tag(f, space);
    table.columns = {"n", "E_n", "omega", "S", "omega_over_E", "omega_over_S"};
    Range lower, upper, rate;
    for (int n : ns) {
        const double e = seq.values[n - 1];
        const double s = seq.weighted_sums[n - 1];
        const double w = modulus(f.handle, 1.0 / n, space, cfg.modulus).value;
        const double we = ratio(w, e, floor);
        const double ws = ratio(w, s, floor);
        lower.add(we);
        upper.add(ws);
        rate.add(w * n * n);
        table.rows.push_back({static_cast<double>(n), e, w, s, we, ws});
    }

    const std::string tag = space_tag(f, space);
    const std::string grid = "n in [" + std::to_string(ns.front()) + ", " + std::to_string(ns.back()) + "], " +
                             std::to_string(ns.size()) + " values";
    ExperimentOutput out;

    auto lo = ratio_report("jackson_direct " + tag, grid, lower, kNaN);
    lo.passed = lower.count > 0 && lower.lo > 0.0 && std::isfinite(lower.hi);
    lo.detail = "omega(f,1/n)/E_n over n with E_n > 0 (" + std::to_string(lower.count) + " of " +
                std::to_string(ns.size()) + "); min must be positive";
    out.reports.push_back(lo);

    auto up = ratio_report("jackson_inverse " + tag, grid, upper, kNaN);
    up.passed = upper.count > 0 && std::isfinite(upper.hi);
    up.detail = "omega(f,1/n)/S(n) over n with S(n) > 0; max must be finite";
    out.reports.push_back(up);

    if (cfg.rate_check) {
        auto r = ratio_report("jackson_rate " + tag, grid, rate, cfg.rate_factor);
        r.passed = rate.count == static_cast<int>(ns.size()) && rate.lo > 0.0 && rate.hi <= cfg.rate_factor * rate.lo;
        r.detail = "omega(f,1/n) n^2 must stay within a factor " + num(cfg.rate_factor);
        out.reports.push_back(r);
    }
    out.reports.front().runtime_seconds = elapsed(start);
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentOutput verify_jackson_operator(const CorpusFunction& f, const SpaceParams& space,
                                         const JacksonOperatorConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    if (cfg.ns.empty())
        throw DomainError("verify_jackson_operator: no degrees given");
    Table table;
    table.name = "jackson_operator " + space_tag(f, space);
    table.columns = {"n", "degree_bound", "above_degree_mass", "error", "error_n2", "E_n"};
    double worst_mass = 0.0, worst_gap = std::numeric_limits<double>::infinity();
    Range rate;
    for (int n : cfg.ns) {
        const JacksonSpec spec = make_jackson_spec(n, space.mu);
        const JacksonResult q = jackson_operator(f.handle, spec, cfg.jackson);
        const double err = weighted_distance(f.handle, FunctionHandle::polynomial(q.coeffs), space.p, space.alpha,
                                             cfg.approx.resolution);
        const double e = best_approx(f.handle, n, space, cfg.approx).value;
        worst_mass = std::max(worst_mass, q.above_degree_mass);
        worst_gap = std::min(worst_gap, err - e);
        rate.add(err * n * n);
        table.rows.push_back({static_cast<double>(n), static_cast<double>(spec.degree_bound()), q.above_degree_mass,
                              err, err * n * n, e});
    }
    const std::string tag = space_tag(f, space);
    std::string grid = "n in {";
    for (std::size_t i = 0; i < cfg.ns.size(); ++i)
        grid += (i ? ", " : "") + std::to_string(cfg.ns[i]);
    grid += "}";

    ExperimentOutput out;
    VerificationReport deg;
    deg.name = "jackson_operator_degree " + tag;
    deg.grid = grid;
    deg.max_deviation = worst_mass;
    deg.tolerance = cfg.jackson.mass_limit;
    deg.passed = worst_mass <= cfg.jackson.mass_limit;
    deg.detail = "relative coefficient mass of Q_n beyond degree n-1";
    out.reports.push_back(deg);

    auto r = ratio_report("jackson_operator_rate " + tag, grid, rate, cfg.rate_factor);
    r.passed = rate.count == static_cast<int>(cfg.ns.size()) && rate.lo > 0.0 && rate.hi < cfg.rate_factor * rate.lo;
    r.detail = "||f - Q_n|| n^2 must vary by less than a factor " + num(cfg.rate_factor);
    out.reports.push_back(r);

    VerificationReport best;
    best.name = "jackson_operator_vs_best " + tag;
    best.grid = grid;
    best.max_deviation = std::max(0.0, -worst_gap);
    best.tolerance = 1e-8;
    best.passed = worst_gap >= -1e-8;
    best.detail = "||f - Q_n|| >= E_n - 1e-8; min gap " + num(worst_gap);
    out.reports.push_back(best);

    out.reports.front().runtime_seconds = elapsed(start);
    out.tables.push_back(std::move(table));
    return out;
}

ExperimentOutput run_equivalence_experiment(const CorpusFunction& f, const SpaceParams& space,
                                            const EquivalenceExperimentConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> deltas = cfg.deltas;
    if (deltas.empty())
        for (int k = 1; k <= 8; ++k)
            deltas.push_back(std::numbers::pi / std::ldexp(1.0, k));
    const std::vector<EquivalenceRow> rows = equivalence_ratio(f.handle, deltas, space, cfg.modulus, cfg.k_functional);

    Table table;
    table.name = "equivalence " + space_tag(f, space);
    table.columns = {"delta", "omega", "K", "rho", "rho_weighted"};
    Range rho, weighted;
    int inconsistent = 0;
    for (const auto& row : rows) {
        const double r = row.inconsistent ? kNaN : row.rho;
        const double rw = row.inconsistent ? kNaN : row.rho_weighted;
        inconsistent += row.inconsistent ? 1 : 0;
        rho.add(r);
        weighted.add(rw);
        table.rows.push_back({row.delta, row.omega, row.k_value, r, rw});
    }
    const std::string tag = space_tag(f, space);
    const std::string grid = std::to_string(deltas.size()) + " deltas in [" + num(*std::min_element(deltas.begin(), deltas.end())) +
                             ", " + num(*std::max_element(deltas.begin(), deltas.end())) + "]";
    const std::string note = inconsistent ? ", " + std::to_string(inconsistent) + " rows with K = 0 < omega" : "";

    ExperimentOutput out;
    auto up = ratio_report("equivalence_upper " + tag, grid, weighted, cfg.spread_limit);
    up.passed = inconsistent == 0 && weighted.count > 0 && weighted.lo > 0.0 &&
                weighted.hi <= cfg.spread_limit * weighted.lo;
    up.detail = "rho cos^{2mu}(delta/2) bounded above: max/min spread must be <= " + num(cfg.spread_limit) + note;
    out.reports.push_back(up);

    auto lo = ratio_report("equivalence_lower " + tag, grid, rho, cfg.spread_limit);
    lo.passed = inconsistent == 0 && rho.count > 0 && rho.lo > 0.0 && rho.hi <= cfg.spread_limit * rho.lo;
    lo.detail = "rho bounded below: max/min spread must be <= " + num(cfg.spread_limit) + note;
    out.reports.push_back(lo);

    out.reports.front().runtime_seconds = elapsed(start);
    out.tables.push_back(std::move(table));
    return out;
}

} // namespace gtrans
