#include "mfrisk/app/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <unistd.h>

#include "mfrisk/app/acceptance.hpp"
#include "mfrisk/compound.hpp"
#include "mfrisk/ensemble.hpp"
#include "mfrisk/errors.hpp"
#include "mfrisk/log.hpp"
#include "mfrisk/mfpp.hpp"
#include "mfrisk/risk.hpp"
#include "mfrisk/ruin.hpp"
#include "mfrisk/stats.hpp"

namespace mfrisk::app
{
using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto const r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(ExperimentConfig const& cfg,
                     std::vector<std::string> columns)
    : n_cols_(columns.size())
{
    text_ = "# mfrisk " + library_version()
            + " config_hash=" + config_hash(cfg.source) + "\n";
    row(columns);
}

void CsvWriter::row(std::vector<std::string> const& cells)
{
    if (cells.size() != n_cols_)
        throw std::logic_error("csv row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i)
            text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

namespace
{
std::string num(double x) { return format_number(x); }

std::string num(std::int64_t x) { return std::to_string(x); }

std::string num(std::size_t x) { return std::to_string(x); }

// Index of each time on the grid; a time off the grid is a config error.
std::vector<std::size_t> grid_indices(Grid const& g,
                                      std::vector<double> const& ts,
                                      char const* what)
{
    std::vector<std::size_t> idx;
    for (double t : ts)
    {
        try
        {
            idx.push_back(g.index_of(t));
        }
        catch (GridError const&)
        {
            throw ConfigError(std::string(what) + " time " + num(t)
                              + " is not a multiple of sim.grid_step");
        }
    }
    return idx;
}

// Y, N and the claim sum or surplus on the output grid of one path.
struct PathRecord
{
    std::vector<double> y;
    std::vector<std::int64_t> n;
    std::vector<double> x;
};

PathRecord simulate_one(ExperimentConfig const& cfg, ClaimModel const& claims,
                        Grid const& grid, Rng& rng)
{
    auto const y = sample_inverse_path(cfg.params, grid, cfg.sim.operational_step,
                                       rng);
    auto const n = simulate_mfpp(cfg.params, y, rng);
    PathRecord r{y.values, n.counts, {}};
    if (cfg.risk)
    {
        r.x = simulate_surplus(cfg.params, *cfg.risk, claims, y, n, rng).values;
        return r;
    }
    r.x.resize(n.counts.size());
    std::int64_t drawn = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i)
    {
        for (; drawn < n.counts[i]; ++drawn)
            total += claims.sample(rng);
        r.x[i] = total;
    }
    return r;
}

std::vector<PathRecord> simulate_ensemble(ExperimentConfig const& cfg,
                                          Grid const& grid)
{
    auto const claims = cfg.claim_model();
    return run_ensemble<PathRecord>(
        cfg.sim.n_paths, cfg.sim.master_seed, cfg.sim.workers,
        [&](Rng& rng, std::size_t) {
            return simulate_one(cfg, claims, grid, rng);
        });
}

// Closed-form mean and variance of the C_or_R column given Var Y(t).
std::pair<double, double> third_column_moments(ExperimentConfig const& cfg,
                                               double t, double var_y)
{
    auto const& p = cfg.params;
    auto const claims = cfg.claim_model();
    double const lu = p.lambda * mean_inverse(p, t);
    double const m = claims.mean();
    double m2 = std::numeric_limits<double>::infinity();
    try
    {
        m2 = claims.second_moment();
    }
    catch (DomainError const&)
    {
        // heavy-tailed claims: infinite variance
    }
    double const var_sum = lu * m2 + p.lambda * p.lambda * m * m * var_y;
    if (!cfg.risk)
        return {lu * m, var_sum};
    double const mean = surplus_mean(p, *cfg.risk, claims, t);
    if (cfg.risk->variant == SurplusVariant::mfrp)
    {
        double const k = cfg.risk->mu * p.lambda * cfg.risk->rho;
        return {mean, k * k * var_y + lu * m2};
    }
    return {mean, var_sum};
}

json estimate_json(Estimate const& e)
{
    return {{"value", e.value}, {"std_error", e.std_error}};
}

}  // namespace

Outputs cmd_simulate(ExperimentConfig const& cfg)
{
    Grid const grid = Grid::to(cfg.sim.horizon, cfg.sim.grid_step);
    auto const recs = simulate_ensemble(cfg, grid);

    CsvWriter csv(cfg, {"path_id", "t", "Y", "N", "C_or_R"});
    for (std::size_t k = 0; k < recs.size(); ++k)
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv.row({num(k), num(grid[i]), num(recs[k].y[i]),
                     num(recs[k].n[i]), num(recs[k].x[i])});

    json rows = json::array();
    std::vector<double> y(recs.size()), n(recs.size()), x(recs.size());
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        double const t = grid[i];
        for (std::size_t k = 0; k < recs.size(); ++k)
        {
            y[k] = recs[k].y[i];
            n[k] = double(recs[k].n[i]);
            x[k] = recs[k].x[i];
        }
        auto const vy = estimate_variance(y);
        auto const [x_mean, x_var] = third_column_moments(cfg, t, vy.value);
        rows.push_back(
            {{"t", t},
             {"Y",
              {{"mean", estimate_json(estimate_mean(y))},
               {"var", estimate_json(vy)},
               {"closed_form_mean", mean_inverse(cfg.params, t)}}},
             {"N",
              {{"mean", estimate_json(estimate_mean(n))},
               {"var", estimate_json(estimate_variance(n))},
               {"closed_form_mean", mfpp_mean(cfg.params, t)},
               {"closed_form_var", mfpp_var(cfg.params, t, vy.value)}}},
             {"C_or_R",
              {{"mean", estimate_json(estimate_mean(x))},
               {"var", estimate_json(estimate_variance(x))},
               {"closed_form_mean", x_mean},
               {"closed_form_var", x_var}}}});
    }
    json summary{{"version", library_version()},
                 {"config_hash", config_hash(cfg.source)},
                 {"n_paths", cfg.sim.n_paths},
                 {"master_seed", cfg.sim.master_seed},
                 {"note", "closed_form_var uses the ensemble variance of Y"},
                 {"rows", rows}};
    return {{"paths.csv", csv.str()}, {"summary.json", summary.dump(2) + "\n"}};
}

Outputs cmd_moments(ExperimentConfig const& cfg)
{
    auto const& p = cfg.params;
    Grid const grid = Grid::to(
        *std::max_element(cfg.moment_times.begin(), cfg.moment_times.end()),
        cfg.sim.grid_step);
    auto const idx = grid_indices(grid, cfg.moment_times, "moment");
    auto const recs = simulate_ensemble(cfg, grid);

    auto safe = [](auto f) {
        try
        {
            return f();
        }
        catch (DomainError const&)
        {
            return std::nan("");
        }
    };
    CsvWriter csv(cfg, {"t", "U", "U_small", "U_large", "mc_mean_Y",
                        "mc_mean_Y_se", "mc_var_Y", "mc_var_Y_se", "var_Y_large",
                        "mean_N", "mc_mean_N", "mc_mean_N_se", "var_N",
                        "mc_var_N", "mc_var_N_se", "mean_C_or_R",
                        "mc_mean_C_or_R", "mc_mean_C_or_R_se"});
    std::vector<double> y(recs.size()), n(recs.size()), x(recs.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
    {
        double const t = cfg.moment_times[j];
        for (std::size_t k = 0; k < recs.size(); ++k)
        {
            y[k] = recs[k].y[idx[j]];
            n[k] = double(recs[k].n[idx[j]]);
            x[k] = recs[k].x[idx[j]];
        }
        auto const my = estimate_mean(y), vy = estimate_variance(y);
        auto const mn = estimate_mean(n), vn = estimate_variance(n);
        auto const mx = estimate_mean(x);
        csv.row({num(t), num(mean_inverse(p, t)),
                 num(safe([&] { return mean_inverse_asymptotic(p, t, Regime::small); })),
                 num(safe([&] { return mean_inverse_asymptotic(p, t, Regime::large); })),
                 num(my.value), num(my.std_error), num(vy.value),
                 num(vy.std_error),
                 num(safe([&] { return var_inverse_asymptotic(p, t); })),
                 num(mfpp_mean(p, t)), num(mn.value), num(mn.std_error),
                 num(mfpp_var(p, t, vy.value)), num(vn.value),
                 num(vn.std_error),
                 num(third_column_moments(cfg, t, vy.value).first),
                 num(mx.value), num(mx.std_error)});
    }
    return {{"moments.csv", csv.str()}};
}

Outputs cmd_distribution(ExperimentConfig const& cfg)
{
    auto const& p = cfg.params;
    auto const& d = cfg.distribution;
    std::optional<DiscreteClaimLaw> law;
    if (cfg.claims)
        law = cfg.claims->law();

    CsvWriter probs(cfg, {"n", "t", "p_laplace", "p_convolution", "abs_diff",
                          "q_compound"});
    double sum_lt = 0.0, sum_conv = 0.0, sum_q = 0.0;
    std::vector<double> p_lt;
    for (int n = 0; n <= d.n_max; ++n)
    {
        double const a = state_prob_pn(p, n, d.t, PnMethod::laplace);
        double const b = state_prob_pn(p, n, d.t, PnMethod::convolution);
        // q_compound is left empty unless the claims are integer valued
        std::string q;
        if (law)
        {
            double const v = compound_state_prob(p, *law, n, d.t);
            sum_q += v;
            q = num(v);
        }
        p_lt.push_back(a);
        sum_lt += a;
        sum_conv += b;
        probs.row({std::to_string(n), num(d.t), num(a), num(b),
                   num(std::abs(a - b)), q});
    }
    probs.row({"sum", num(d.t), num(sum_lt), num(sum_conv),
               num(std::abs(sum_lt - sum_conv)), law ? num(sum_q) : ""});

    CsvWriter inter(cfg, {"t", "density", "cdf_lt", "one_minus_p0"});
    for (double t : d.interarrival_times)
        inter.row({num(t), num(interarrival_density(p, t)),
                   num(interarrival_cdf_lt(p, t)),
                   num(1 - state_prob_p0(p, t))});

    CsvWriter g(cfg, {"z", "t", "pgf", "truncated_sum"});
    for (double z : d.pgf_z)
    {
        double s = 0.0, zn = 1.0;
        for (double v : p_lt)
        {
            s += zn * v;
            zn *= z;
        }
        g.row({num(z), num(d.t), num(pgf(p, z, d.t)), num(s)});
    }
    return {{"state_probs.csv", probs.str()},
            {"interarrival.csv", inter.str()},
            {"pgf.csv", g.str()}};
}

Outputs cmd_ruin(ExperimentConfig const& cfg)
{
    if (!cfg.risk || cfg.risk->variant != SurplusVariant::mfrp2)
        throw ConfigError("ruin needs a risk section with variant mfrp2");
    if (!cfg.claims)
        throw ConfigError("ruin needs a claims section");
    auto const& p = cfg.params;
    auto const& claims = *cfg.claims;
    double const t = cfg.ruin.horizon;
    double const c = cfg.risk->c;

    CsvWriter csv(cfg, {"u", "horizon", "method", "probability", "std_error",
                        "n_paths", "p_claims_exceed_u_plus_ct",
                        "p_claims_exceed_u"});
    for (double u : cfg.ruin.u_list)
    {
        RiskConfig rc = *cfg.risk;
        rc.u = u;
        auto const mc = ruin_sandwich_mc(p, rc, claims, t, cfg.sim.n_paths,
                                         cfg.sim.master_seed, cfg.sim.workers);
        csv.row({num(u), num(t), to_string(RuinMethod::monte_carlo),
                 num(mc.ruin.probability), num(mc.ruin.std_error),
                 num(mc.ruin.n_paths), num(mc.p_claims_exceed_u_plus_ct),
                 num(mc.p_claims_exceed_u)});
        std::vector<RuinEstimate> other;
        if (claims.kind() == ClaimModel::Kind::exponential && u > 0)
        {
            other.push_back(ruin_prob_lt(p, u, c, claims.rate(), t));
            other.push_back(
                ruin_prob_density_integral(p, u, c, claims.rate(), t));
        }
        if (claims.is_subexponential())
            other.push_back({ruin_asymptotic_subexp(p, claims, u, t), 0.0, 0,
                             t, RuinMethod::asymptotic});
        for (auto const& e : other)
            csv.row({num(u), num(t), to_string(e.method), num(e.probability),
                     num(e.std_error), num(e.n_paths), "", ""});
    }
    return {{"ruin.csv", csv.str()}};
}

Outputs cmd_dependence(ExperimentConfig const& cfg)
{
    if (!cfg.risk)
        throw ConfigError("dependence needs a risk section");
    auto const& dep = cfg.dependence;
    auto const claims = cfg.claim_model();
    auto const r = dependence_exponents(cfg.params, *cfg.risk, claims, dep.s,
                                        dep.delta, dep.t_lo, dep.t_hi,
                                        dep.n_points);
    CsvWriter csv(cfg, {"kind", "s", "delta", "t", "corr"});
    for (auto const& [t, v] : r.lrd_curve)
        csv.row({"lrd", num(dep.s), "", num(t), num(v)});
    for (auto const& [t, v] : r.srd_curve)
        csv.row({"srd", num(dep.s), num(dep.delta), num(t), num(v)});
    json out{{"version", library_version()},
             {"config_hash", config_hash(cfg.source)},
             {"lrd_exponent", r.lrd},
             {"srd_exponent", r.srd},
             {"expected_lrd", cfg.params.alpha2},
             {"expected_srd", (3 - cfg.params.alpha2) / 2}};
    return {{"dependence.csv", csv.str()},
            {"dependence.json", out.dump(2) + "\n"}};
}

Outputs cmd_acceptance(ExperimentConfig const& cfg,
                       std::vector<std::string>* lines)
{
    AcceptanceOptions opt;
    opt.workers = cfg.sim.workers;
    opt.seed = cfg.sim.master_seed;
    opt.scratch_dir = cfg.acceptance.scratch_dir;
    auto ids = cfg.acceptance.criteria.empty() ? all_criteria()
                                               : cfg.acceptance.criteria;
    std::vector<CriterionResult> results;
    for (int id : ids)
    {
        results.push_back(run_criterion(id, opt));
        if (lines)
            lines->push_back(format_line(results.back()));
    }
    auto j = to_json(results);
    j["version"] = library_version();
    j["config_hash"] = config_hash(cfg.source);
    return {{"acceptance.json", j.dump(2) + "\n"}};
}

void write_outputs(Outputs const& files, std::string const& out_dir)
{
    fs::path const dir(out_dir.empty() ? "." : out_dir);
    fs::create_directories(dir);
    std::string const suffix = ".tmp" + std::to_string(::getpid());
    std::vector<fs::path> temps;
    try
    {
        for (auto const& f : files)
        {
            fs::path const tmp = dir / (f.name + suffix);
            temps.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary);
            out << f.contents;
            out.close();
            if (!out)
                throw std::runtime_error("cannot write " + tmp.string());
        }
        for (std::size_t i = 0; i < files.size(); ++i)
            fs::rename(temps[i], dir / files[i].name);
    }
    catch (...)
    {
        std::error_code ec;
        for (auto const& t : temps)
            fs::remove(t, ec);
        throw;
    }
}

}  // namespace mfrisk::app
