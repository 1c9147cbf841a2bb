#include "mfrisk/app/config.hpp"

#include <cstdio>
#include <fstream>

#include "mfrisk/errors.hpp"

namespace mfrisk::app
{
using nlohmann::json;

namespace
{
json const& require(json const& j, char const* key, std::string const& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("missing required field " + where + "." + key);
    return j.at(key);
}

template<class T>
T get(json const& j, char const* key, std::string const& where)
{
    try
    {
        return require(j, key, where).get<T>();
    }
    catch (json::exception const& e)
    {
        throw ConfigError("field " + where + "." + key + ": " + e.what());
    }
}

template<class T>
void get_opt(json const& j, char const* key, std::string const& where, T& out)
{
    if (j.is_object() && j.contains(key))
        out = get<T>(j, key, where);
}

MixedParams parse_params(json const& j)
{
    try
    {
        return MixedParams(get<double>(j, "alpha1", "params"),
                           get<double>(j, "alpha2", "params"),
                           get<double>(j, "c1", "params"),
                           get<double>(j, "c2", "params"),
                           j.contains("lambda") ? get<double>(j, "lambda", "params")
                                                : 1.0);
    }
    catch (DomainError const& e)
    {
        throw ConfigError(std::string("params: ") + e.what());
    }
}

SurplusVariant parse_variant(std::string const& s)
{
    if (s == "mfrp")
        return SurplusVariant::mfrp;
    if (s == "mfrp_variant")
        return SurplusVariant::mfrp_variant;
    if (s == "mfrp2")
        return SurplusVariant::mfrp2;
    throw ConfigError("risk.variant must be mfrp, mfrp_variant or mfrp2, got "
                      + s);
}

ClaimModel parse_claims(json const& j)
{
    auto const type = get<std::string>(j, "type", "claims");
    try
    {
        if (type == "exponential")
            return ClaimModel::exponential(get<double>(j, "rate", "claims"));
        if (type == "pareto")
            return ClaimModel::pareto(get<double>(j, "shape", "claims"),
                                      get<double>(j, "scale", "claims"));
        if (type == "discrete")
            return ClaimModel::discrete(DiscreteClaimLaw(
                get<std::vector<double>>(j, "probs", "claims")));
        if (type == "degenerate")
            return ClaimModel::degenerate(get<double>(j, "value", "claims"));
    }
    catch (DomainError const& e)
    {
        throw ConfigError(std::string("claims: ") + e.what());
    }
    throw ConfigError("unknown claims.type " + type);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(json const& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    c.source = j;
    c.params = parse_params(require(j, "params", "config"));

    auto const& s = require(j, "sim", "config");
    auto const n_paths = get<std::int64_t>(s, "n_paths", "sim");
    if (n_paths < 1)
        throw ConfigError("sim.n_paths must be >= 1");
    c.sim.n_paths = std::size_t(n_paths);
    c.sim.horizon = get<double>(s, "horizon", "sim");
    c.sim.master_seed = get<std::uint64_t>(s, "master_seed", "sim");
    get_opt(s, "grid_step", "sim", c.sim.grid_step);
    get_opt(s, "operational_step", "sim", c.sim.operational_step);
    int workers = 1;
    get_opt(s, "workers", "sim", workers);
    if (workers < 1)
        throw ConfigError("sim.workers must be >= 1");
    c.sim.workers = unsigned(workers);

    if (j.contains("claims"))
        c.claims = parse_claims(j.at("claims"));
    if (j.contains("risk"))
    {
        auto const& r = j.at("risk");
        RiskConfig rc{get<double>(r, "u", "risk"), 0.0, 0.0, 0.0,
                      parse_variant(get<std::string>(r, "variant", "risk"))};
        get_opt(r, "rho", "risk", rc.rho);
        get_opt(r, "c", "risk", rc.c);
        rc.mu = c.claims ? c.claims->mean() : 1.0;
        get_opt(r, "mu", "risk", rc.mu);
        try
        {
            rc.validate();
        }
        catch (DomainError const& e)
        {
            throw ConfigError(std::string("risk: ") + e.what());
        }
        c.risk = rc;
        c.ruin.u_list = {rc.u};
    }

    get_opt(j, "moment_times", "config", c.moment_times);
    if (j.contains("distribution"))
    {
        auto const& d = j.at("distribution");
        get_opt(d, "t", "distribution", c.distribution.t);
        get_opt(d, "n_max", "distribution", c.distribution.n_max);
        get_opt(d, "interarrival_times", "distribution",
                c.distribution.interarrival_times);
        get_opt(d, "pgf_z", "distribution", c.distribution.pgf_z);
    }
    if (j.contains("ruin"))
    {
        auto const& r = j.at("ruin");
        get_opt(r, "u_list", "ruin", c.ruin.u_list);
        get_opt(r, "horizon", "ruin", c.ruin.horizon);
    }
    if (j.contains("dependence"))
    {
        auto const& d = j.at("dependence");
        get_opt(d, "s", "dependence", c.dependence.s);
        get_opt(d, "delta", "dependence", c.dependence.delta);
        get_opt(d, "t_lo", "dependence", c.dependence.t_lo);
        get_opt(d, "t_hi", "dependence", c.dependence.t_hi);
        get_opt(d, "n_points", "dependence", c.dependence.n_points);
    }
    if (j.contains("acceptance"))
    {
        auto const& a = j.at("acceptance");
        get_opt(a, "criteria", "acceptance", c.acceptance.criteria);
        get_opt(a, "scratch_dir", "acceptance", c.acceptance.scratch_dir);
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    try
    {
        return from_json(json::parse(in));
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

ExperimentConfig ExperimentConfig::reference()
{
    return from_json(json{
        {"params",
         {{"alpha1", 0.9}, {"alpha2", 0.5}, {"c1", 0.5}, {"c2", 0.5},
          {"lambda", 1.0}}},
        {"claims", {{"type", "exponential"}, {"rate", 1.0}}},
        {"risk", {{"u", 2.0}, {"rho", 0.2}, {"c", 1.5}, {"variant", "mfrp2"}}},
        {"sim",
         {{"n_paths", 1000},
          {"grid_step", 0.5},
          {"operational_step", 1e-3},
          {"horizon", 5.0},
          {"master_seed", 20240611},
          {"workers", 1}}}});
}

ClaimModel ExperimentConfig::claim_model() const
{
    return claims ? *claims : ClaimModel::degenerate(1.0);
}

void ExperimentConfig::validate() const
{
    if (sim.n_paths < 1)
        throw ConfigError("sim.n_paths must be >= 1");
    if (!(sim.grid_step > 0) || !(sim.operational_step > 0))
        throw ConfigError("sim.grid_step and sim.operational_step must be > 0");
    if (!(sim.horizon > 0))
        throw ConfigError("sim.horizon must be > 0");
    if (sim.workers < 1)
        throw ConfigError("sim.workers must be >= 1");
    for (double t : moment_times)
        if (!(t > 0))
            throw ConfigError("moment_times must be positive");
    if (distribution.n_max < 0 || !(distribution.t > 0))
        throw ConfigError("distribution needs t > 0 and n_max >= 0");
    if (!(ruin.horizon > 0))
        throw ConfigError("ruin.horizon must be > 0");
}

std::string config_hash(json const& j)
{
    // the worker count does not change any output, so it is not hashed
    json k = j;
    if (k.is_object() && k.contains("sim") && k["sim"].is_object())
        k["sim"].erase("workers");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : k.dump())
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string const& library_version()
{
    static std::string const v = "1.0.0";
    return v;
}

}  // namespace mfrisk::app
