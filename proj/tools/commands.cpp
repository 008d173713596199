#include "commands.hpp"

#include "ghshot/batch.hpp"
#include "ghshot/gig_sampler.hpp"
#include "ghshot/oracle_stats.hpp"
#include "ghshot/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ghcli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double round_sig(double v, int digits)
{
    if (v == 0.0 || !std::isfinite(v))
        return v;
    const double scale = std::pow(10.0, digits - 1 - int(std::floor(std::log10(std::abs(v)))));
    return std::round(v * scale) / scale;
}

namespace {

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary)
    {
        if (!out_)
            throw std::runtime_error("cannot write " + path.string());
        std::vector<std::string> h(header);
        row_strings(h);
    }

    template <class... Cells>
    void row(const Cells&... cells)
    {
        std::vector<std::string> v{cell(cells)...};
        row_strings(v);
    }

private:
    std::ofstream out_;

    static std::string cell(double v) { return csv_number(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return csv_field(v); }
    static std::string cell(const char* v) { return csv_field(v); }

    void row_strings(const std::vector<std::string>& v)
    {
        for (std::size_t i = 0; i < v.size(); ++i)
            out_ << (i ? "," : "") << v[i];
        out_ << "\r\n";
    }
};

void write_json(const fs::path& path, const ordered_json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

const char* component_name(ghshot::GigComponent c)
{
    switch (c) {
    case ghshot::GigComponent::n1:
        return "N1";
    case ghshot::GigComponent::n2:
        return "N2";
    default:
        return "extra";
    }
}

ordered_json params_json(const ghshot::GHParams& p)
{
    ordered_json j;
    j["lambda"] = p.gig.lambda;
    j["delta"] = p.gig.delta;
    j["gamma"] = p.gig.gamma;
    j["beta"] = p.beta;
    j["mu"] = p.mu;
    j["sigma"] = p.sigma;
    return j;
}

ordered_json truncation_json(const ghshot::TruncationConfig& t)
{
    ordered_json j;
    j["tau"] = t.tau;
    j["p_T"] = t.p_T;
    if (!t.schedule.empty())
        j["schedule"] = t.schedule;
    j["eps_first"] = t.eps_first;
    j["eps_ratio"] = t.eps_ratio;
    j["max_levels"] = t.max_levels;
    j["beta0"] = t.beta0;
    j["optimize_beta0"] = t.optimize_beta0;
    j["use_mean_adjust"] = t.use_mean_adjust;
    j["inject_residual"] = t.inject_residual;
    return j;
}

ordered_json envelope_json(const RunConfig& c)
{
    const ghshot::EnvelopeConfig e = c.envelope();
    ordered_json j;
    j["regime"] = ghshot::sampler_regime(c.params.gig) == ghshot::Regime::A ? "A" : "B";
    j["z1"] = e.z1;
    j["z0"] = e.z0;
    j["H0"] = e.H0;
    j["squeeze"] = e.squeeze;
    j["squeeze_level"] = ghshot::squeeze_constant(c.params.gig, e);
    return j;
}

ordered_json counter_json(const ghshot::StageCounter& s)
{
    return ordered_json{{"proposed", s.proposed}, {"accepted", s.accepted}};
}

ordered_json stats_json(const ghshot::SamplerStats& s)
{
    ordered_json j;
    j["dominating"] = counter_json(s.dominating);
    j["marginal"] = counter_json(s.marginal);
    j["z_stage"] = counter_json(s.z_stage);
    j["squeeze_skips"] = s.squeeze_skips;
    return j;
}

ordered_json per_component(const std::vector<ghshot::GigComponent>& ids,
                           const std::vector<double>& values)
{
    ordered_json j = ordered_json::object();
    for (std::size_t k = 0; k < ids.size() && k < values.size(); ++k)
        j[component_name(ids[k])] = values[k];
    return j;
}

ghshot::BatchSpec batch_spec(const RunConfig& c)
{
    ghshot::BatchSpec s;
    s.params = c.params;
    s.truncation = c.truncation;
    s.envelope = c.envelope();
    s.T = c.T;
    s.seed = c.seed.value();
    return s;
}

ordered_json run_header(const RunConfig& c, const char* command)
{
    ordered_json j;
    j["command"] = command;
    j["seed"] = c.seed.value();
    j["params"] = params_json(c.params);
    j["T"] = c.T;
    j["truncation"] = truncation_json(c.truncation);
    j["envelope"] = envelope_json(c);
    return j;
}

void warn(const RunConfig& c, std::ostream& log, ordered_json& j)
{
    j["warnings"] = ordered_json::array();
    if (auto w = ghshot::parameter_warning(c.params)) {
        log << "warning: " << *w << "\n";
        j["warnings"].push_back(*w);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double quantile_sorted(const std::vector<double>& s, double p)
{
    const double pos = p * double(s.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= s.size())
        return s.back();
    return s[i] + (pos - double(i)) * (s[i + 1] - s[i]);
}

}  // namespace

int cmd_simulate(const RunConfig& c, const fs::path& out, std::ostream& log)
{
    fs::create_directories(out);
    const ghshot::BatchSpec spec = batch_spec(c);
    const std::vector<double> grid = c.simulate.grid.empty() ? std::vector<double>{0.0, c.T}
                                                             : c.simulate.grid;
    const ghshot::PathBatch b = ghshot::path_batch(spec, c.simulate.n_paths, grid);

    CsvWriter csv(out / "paths.csv", {"path_id", "t", "value"});
    for (std::size_t i = 0; i < b.values.size(); ++i)
        for (std::size_t k = 0; k < grid.size(); ++k)
            csv.row(i, grid[k], b.values[i][k]);

    ordered_json m = run_header(c, "simulate");
    m["n_paths"] = c.simulate.n_paths;
    m["grid_points"] = grid.size();
    std::vector<std::string> names;
    for (auto id : b.components)
        names.push_back(component_name(id));
    m["components"] = names;
    m["acceptance"] = stats_json(b.summary.stats);
    m["jumps_total"] = b.summary.jumps;
    m["eps_final_mean"] = per_component(b.components, b.summary.eps_final_mean);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < b.records.size(); ++i) {
        const ghshot::PathRecord& r = b.records[i];
        ordered_json p;
        p["path_id"] = i;
        p["jumps"] = r.jumps;
        p["eps_final"] = per_component(b.components, r.eps_final);
        p["residual"] = {{"mu_lower", r.gig_residual.mu_lower},
                         {"mu_upper", r.gig_residual.mu_upper},
                         {"var_lower", r.gig_residual.var_lower},
                         {"var_upper", r.gig_residual.var_upper},
                         {"gaussian_drift", r.residual_drift},
                         {"gaussian_variance", r.residual_var}};
        rows.push_back(std::move(p));
    }
    m["paths"] = std::move(rows);
    warn(c, log, m);
    write_json(out / "manifest.json", m);
    log << "wrote " << b.values.size() << " paths x " << grid.size() << " points to "
        << (out / "paths.csv").string() << "\n";
    return 0;
}

int cmd_marginal_test(const RunConfig& c, const fs::path& out, std::ostream& log)
{
    if (c.T != 1.0)
        throw std::invalid_argument("marginal-test compares W(1) with the GH law; set T = 1");
    fs::create_directories(out);
    const ghshot::BatchSpec spec = batch_spec(c);
    const std::size_t n = c.marginal.n;

    ghshot::BatchSummary summary;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> sim = ghshot::endpoint_batch(spec, n, &summary);
    const double t_sim = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    std::vector<double> ref = ghshot::oracle_batch(c.params, spec.seed, n);
    const double t_ref = seconds_since(t0);
    const double ks = ghshot::ks_two_sample(sim, ref);

    ordered_json r;
    r["ks_statistic"] = ks;
    r["n"] = n;
    r["time_per_sample_seconds"] = round_sig(t_sim / double(n), 3);
    r["params"] = params_json(c.params);
    r["tau"] = c.truncation.tau;
    r["p_T"] = c.truncation.p_T;
    r["oracle_time_per_sample_seconds"] = round_sig(t_ref / double(n), 3);
    r["seed"] = spec.seed;
    r["threads"] = ghshot::max_threads();
    r["envelope"] = envelope_json(c);
    r["acceptance"] = stats_json(summary.stats);
    r["eps_final_mean"] = per_component(ghshot::GigSampler(c.params.gig, c.envelope()).component_ids(),
                                        summary.eps_final_mean);
    warn(c, log, r);
    write_json(out / "report.json", r);

    std::sort(sim.begin(), sim.end());
    std::sort(ref.begin(), ref.end());
    if (c.marginal.histogram_bins > 0) {
        // Common range from the pooled 0.5% and 99.5% quantiles.
        const double lo = std::min(quantile_sorted(sim, 0.005), quantile_sorted(ref, 0.005));
        const double hi = std::max(quantile_sorted(sim, 0.995), quantile_sorted(ref, 0.995));
        const int bins = c.marginal.histogram_bins;
        const double h = (hi - lo) / bins;
        std::vector<std::size_t> cs(bins), cr(bins);
        auto fill = [&](const std::vector<double>& v, std::vector<std::size_t>& cnt) {
            for (double x : v)
                if (x >= lo && x < hi)
                    ++cnt[std::min(bins - 1, int((x - lo) / h))];
        };
        fill(sim, cs);
        fill(ref, cr);
        CsvWriter csv(out / "histogram.csv",
                      {"bin_left", "bin_right", "simulated_density", "oracle_density", "gh_pdf"});
        for (int k = 0; k < bins; ++k) {
            const double a = lo + k * h, b = lo + (k + 1) * h;
            csv.row(a, b, double(cs[k]) / (double(n) * h), double(cr[k]) / (double(n) * h),
                    ghshot::gh_pdf(c.params, 0.5 * (a + b)));
        }
    }
    if (c.marginal.qq_quantiles > 0) {
        CsvWriter csv(out / "qq.csv", {"probability", "simulated", "oracle"});
        const auto qq = ghshot::qq_points(sim, ref, std::size_t(c.marginal.qq_quantiles));
        for (std::size_t i = 0; i < qq.size(); ++i)
            csv.row((double(i) + 0.5) / double(qq.size()), qq[i].first, qq[i].second);
    }
    log << "ks_statistic " << ks << " over n = " << n << ", "
        << round_sig(t_sim / double(n), 3) << " s per sample\n";
    return 0;
}

int cmd_diagnostics(const RunConfig& c, const fs::path& out, std::ostream& log)
{
    using namespace ghshot;
    fs::create_directories(out);
    const DiagnosticsOptions& o = c.diagnostics;
    std::size_t violations = 0;

    {
        CsvWriter csv(out / "bessel_bounds.csv",
                      {"nu", "z", "bound_A", "bound_B", "z_hankel_sq", "ordered"});
        for (double nu : o.bound_nus) {
            const double corner = z1_max(nu);
            const double H0 = scaled_hankel_sq(nu, corner);
            for (int i = 0; i < o.z_points; ++i) {
                const double z = o.z_min * std::pow(o.z_max / o.z_min, double(i) / (o.z_points - 1));
                const double a = bound_A(z, nu, corner), b = bound_B(z, nu, corner, H0);
                const double h = scaled_hankel_sq(nu, z);
                const double tol = 1e-12 * h;
                const bool ok = nu >= 0.5 ? (a <= h + tol && h <= b + tol)
                                          : (b <= h + tol && h <= a + tol);
                violations += !ok;
                csv.row(nu, z, a, b, h, ok ? 1 : 0);
            }
        }
    }

    {
        CsvWriter csv(out / "acceptance_bounds.csv",
                      {"nu", "component", "x", "z0", "lower_bound", "empirical_rate", "proposals",
                       "standard_error"});
        std::uint64_t row = 0;
        for (double nu : o.acceptance_nus) {
            const GigParams p{-nu, c.params.gig.delta, c.params.gig.gamma > 0 ? c.params.gig.gamma : 0.1};
            const EnvelopeConfig cfg = make_envelope(p, z1_max(nu), z1_max(nu), false);
            const GigSampler s(p, cfg);
            for (Component comp : {Component::N1, Component::N2})
                for (double x : o.acceptance_x) {
                    const Z0Optimum opt = optimize_z0(x, p, cfg.z1, comp);
                    RandomStream rng(c.seed.value(), StreamKind::auxiliary, row++);
                    SamplerStats st;
                    for (std::size_t k = 0; k < o.proposals_per_x; ++k)
                        s.thin_point(x, comp, rng, &st);
                    const double rate = st.z_stage.rate();
                    const double se = std::sqrt(rate * (1 - rate) / double(o.proposals_per_x));
                    csv.row(nu, comp == Component::N1 ? "N1" : "N2", x, opt.z0, opt.bound, rate,
                            o.proposals_per_x, se);
                }
        }
    }

    {
        CsvWriter csv(out / "residual_sandwich.csv",
                      {"lambda", "delta", "gamma", "eps", "mu_lower", "mu_quadrature", "mu_upper",
                       "var_lower", "var_quadrature", "var_upper", "ordered"});
        std::vector<GigTriple> sets = o.sandwich_sets;
        if (sets.empty()) {
            if (c.params.gig.gamma == 0.0)
                throw std::invalid_argument("residual sandwich needs gamma > 0; give sandwich_sets");
            sets.push_back({c.params.gig.lambda, c.params.gig.delta, c.params.gig.gamma});
        }
        for (const GigTriple& t : sets) {
            const GigParams p{t.lambda, t.delta, t.gamma};
            const EnvelopeConfig cfg = default_envelope(p);
            for (double eps : o.sandwich_eps) {
                const Moments q = gig_residual_quadrature(p, eps);
                const ResidualMoments up = gig_residual_upper(p, cfg, eps, 1, 1);
                const ResidualMoments lo = gig_residual_lower_best(p, cfg, eps, 1, 1);
                const bool ok = lo.mu_lower <= q.mu && q.mu <= up.mu_upper &&
                                lo.var_lower <= q.var && q.var <= up.var_upper;
                violations += !ok;
                csv.row(t.lambda, t.delta, t.gamma, eps, lo.mu_lower, q.mu, up.mu_upper,
                        lo.var_lower, q.var, up.var_upper, ok ? 1 : 0);
            }
        }
    }

    log << "diagnostics written to " << out.string() << "; " << violations
        << " ordering violations\n";
    return violations ? 2 : 0;
}

}  // namespace ghcli
