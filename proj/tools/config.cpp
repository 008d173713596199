#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ghcli {

using nlohmann::json;

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : std::runtime_error(what), field_(std::move(field)), line_(line)
{
}

ghshot::EnvelopeConfig RunConfig::envelope() const
{
    ghshot::EnvelopeConfig cfg = ghshot::default_envelope(params.gig, squeeze);
    if (z1 || z0)
        cfg = ghshot::make_envelope(params.gig, z1.value_or(cfg.z1), z0.value_or(cfg.z0), squeeze);
    return cfg;
}

namespace {

// Minimal scanner over text that is already known to be valid JSON.
class LineScanner {
public:
    LineScanner(const std::string& text, const std::string& target) : s_(text), target_(target) {}

    int find()
    {
        value("");
        return found_;
    }

private:
    const std::string& s_;
    const std::string& target_;
    std::size_t i_ = 0;
    int line_ = 1;
    int found_ = 0;

    void ws()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            if (s_[i_] == '\n')
                ++line_;
            ++i_;
        }
    }

    std::string string()
    {
        std::string out;
        ++i_;  // opening quote
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\' && i_ + 1 < s_.size())
                ++i_;
            out += s_[i_++];
        }
        ++i_;
        return out;
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out += c;
        }
        return out;
    }

    void value(const std::string& ptr)
    {
        ws();
        if (ptr == target_ && !found_)
            found_ = line_;
        if (i_ >= s_.size())
            return;
        const char c = s_[i_];
        if (c == '{') {
            ++i_;
            for (;;) {
                ws();
                if (i_ >= s_.size() || s_[i_] == '}')
                    break;
                const std::string key = string();
                ws();
                ++i_;  // ':'
                value(ptr + "/" + escape(key));
                ws();
                if (i_ < s_.size() && s_[i_] == ',')
                    ++i_;
            }
            ++i_;
        } else if (c == '[') {
            ++i_;
            for (std::size_t k = 0;; ++k) {
                ws();
                if (i_ >= s_.size() || s_[i_] == ']')
                    break;
                value(ptr + "/" + std::to_string(k));
                ws();
                if (i_ < s_.size() && s_[i_] == ',')
                    ++i_;
            }
            ++i_;
        } else if (c == '"') {
            string();
        } else {
            while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
                   s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']')
                ++i_;
        }
    }
};

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const
    {
        int line = line_of(text_, ptr);
        // Fall back to the nearest enclosing field that exists in the document.
        std::string p = ptr;
        while (!line && !p.empty()) {
            p = p.substr(0, p.rfind('/'));
            line = line_of(text_, p);
        }
        std::ostringstream os;
        os << source_;
        if (line)
            os << ":" << line;
        os << ": " << (ptr.empty() ? "/" : ptr) << ": " << msg;
        throw ConfigError(ptr, line, os.str());
    }

    // Rejects keys not listed.
    void only(const json& obj, const std::string& ptr, std::initializer_list<const char*> keys) const
    {
        if (!obj.is_object())
            fail(ptr, "expected an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k))
                fail(ptr + "/" + k, "unknown field");
    }

    double number(const json& obj, const std::string& ptr, const char* key, double fallback) const
    {
        if (!obj.contains(key))
            return fallback;
        const json& v = obj[key];
        if (!v.is_number())
            fail(ptr + "/" + key, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d))
            fail(ptr + "/" + key, "expected a finite number");
        return d;
    }

    std::uint64_t count(const json& obj, const std::string& ptr, const char* key,
                        std::uint64_t fallback) const
    {
        if (!obj.contains(key))
            return fallback;
        const json& v = obj[key];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            fail(ptr + "/" + key, "expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    bool flag(const json& obj, const std::string& ptr, const char* key, bool fallback) const
    {
        if (!obj.contains(key))
            return fallback;
        if (!obj[key].is_boolean())
            fail(ptr + "/" + key, "expected true or false");
        return obj[key].get<bool>();
    }

    std::vector<double> numbers(const json& obj, const std::string& ptr, const char* key,
                                std::vector<double> fallback) const
    {
        if (!obj.contains(key))
            return fallback;
        const json& v = obj[key];
        const std::string p = ptr + "/" + key;
        if (!v.is_array())
            fail(p, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                fail(p + "/" + std::to_string(i), "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    // Runs a library validator and reports its message against `ptr`.
    void check(const std::string& ptr, const std::function<void()>& f) const
    {
        try {
            f();
        } catch (const std::exception& e) {
            fail(ptr, e.what());
        }
    }

private:
    const std::string& text_;
    std::string source_;
};

void read_params(const Reader& r, const json& j, RunConfig& c)
{
    const std::string ptr = "/params";
    if (!j.contains("params"))
        r.fail("", "missing field \"params\"");
    const json& p = j["params"];
    r.only(p, ptr, {"lambda", "delta", "gamma", "alpha", "beta", "mu", "sigma"});
    for (const char* k : {"lambda", "delta"})
        if (!p.contains(k))
            r.fail(ptr, std::string("missing field \"") + k + "\"");
    const double lambda = r.number(p, ptr, "lambda", 0.0);
    const double delta = r.number(p, ptr, "delta", 0.0);
    const double beta = r.number(p, ptr, "beta", 0.0);
    const double mu = r.number(p, ptr, "mu", 0.0);
    if (p.contains("alpha")) {
        if (p.contains("gamma"))
            r.fail(ptr + "/alpha", "give either alpha or gamma, not both");
        if (p.contains("sigma"))
            r.fail(ptr + "/sigma", "the alpha form fixes sigma = 1");
        const double alpha = r.number(p, ptr, "alpha", 0.0);
        r.check(ptr + "/alpha",
                [&] { c.params = ghshot::GHParams::from_alpha(lambda, alpha, beta, delta, mu); });
    } else {
        if (!p.contains("gamma"))
            r.fail(ptr, "missing field \"gamma\" (or \"alpha\")");
        c.params.gig = {lambda, delta, r.number(p, ptr, "gamma", 0.0)};
        c.params.beta = beta;
        c.params.mu = mu;
        c.params.sigma = r.number(p, ptr, "sigma", 1.0);
    }
    r.check(ptr, [&] { ghshot::validate(c.params); });
}

void read_truncation(const Reader& r, const json& j, RunConfig& c)
{
    if (!j.contains("truncation"))
        return;
    const std::string ptr = "/truncation";
    const json& t = j["truncation"];
    r.only(t, ptr,
           {"tau", "p_T", "schedule", "eps_first", "eps_ratio", "max_levels", "beta0",
            "optimize_beta0", "use_mean_adjust", "inject_residual"});
    auto& tc = c.truncation;
    tc.tau = r.number(t, ptr, "tau", tc.tau);
    tc.p_T = r.number(t, ptr, "p_T", tc.p_T);
    tc.schedule = r.numbers(t, ptr, "schedule", tc.schedule);
    tc.eps_first = r.number(t, ptr, "eps_first", tc.eps_first);
    tc.eps_ratio = r.number(t, ptr, "eps_ratio", tc.eps_ratio);
    tc.max_levels = r.count(t, ptr, "max_levels", tc.max_levels);
    tc.beta0 = r.number(t, ptr, "beta0", tc.beta0);
    tc.optimize_beta0 = r.flag(t, ptr, "optimize_beta0", tc.optimize_beta0);
    tc.use_mean_adjust = r.flag(t, ptr, "use_mean_adjust", tc.use_mean_adjust);
    tc.inject_residual = r.flag(t, ptr, "inject_residual", tc.inject_residual);
    r.check(ptr, [&] { tc.validate(); });
}

void read_envelope(const Reader& r, const json& j, RunConfig& c)
{
    if (!j.contains("envelope"))
        return;
    const std::string ptr = "/envelope";
    const json& e = j["envelope"];
    r.only(e, ptr, {"squeeze", "z1", "z0"});
    c.squeeze = r.flag(e, ptr, "squeeze", c.squeeze);
    for (const char* k : {"z1", "z0"}) {
        if (!e.contains(k))
            continue;
        const double v = r.number(e, ptr, k, 0.0);
        if (v < 0.0)
            r.fail(ptr + "/" + k, "must be nonnegative");
        (std::string(k) == "z1" ? c.z1 : c.z0) = v;
    }
    r.check(ptr, [&] { c.envelope(); });
}

void read_simulate(const Reader& r, const json& j, RunConfig& c)
{
    if (!j.contains("simulate"))
        return;
    const std::string ptr = "/simulate";
    const json& s = j["simulate"];
    r.only(s, ptr, {"n_paths", "grid"});
    c.simulate.n_paths = r.count(s, ptr, "n_paths", c.simulate.n_paths);
    if (c.simulate.n_paths == 0)
        r.fail(ptr + "/n_paths", "must be at least 1");
    if (!s.contains("grid"))
        return;
    const std::string gp = ptr + "/grid";
    const json& g = s["grid"];
    if (g.is_object()) {
        r.only(g, gp, {"start", "stop", "points"});
        const double a = r.number(g, gp, "start", 0.0);
        const double b = r.number(g, gp, "stop", c.T);
        const std::uint64_t n = r.count(g, gp, "points", 2);
        if (n < 2)
            r.fail(gp + "/points", "need at least 2 points");
        if (!(b > a))
            r.fail(gp + "/stop", "stop must exceed start");
        c.simulate.grid.resize(n);
        for (std::uint64_t i = 0; i < n; ++i)
            c.simulate.grid[i] = i + 1 == n ? b : a + (b - a) * double(i) / double(n - 1);
    } else {
        c.simulate.grid = r.numbers(s, ptr, "grid", {});
    }
    const auto& grid = c.simulate.grid;
    if (grid.empty())
        r.fail(gp, "grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string ip = g.is_array() ? gp + "/" + std::to_string(i) : gp;
        if (grid[i] < 0.0 || grid[i] > c.T)
            r.fail(ip, "grid point outside [0, T]");
        if (i > 0 && grid[i] < grid[i - 1])
            r.fail(ip, "grid must be nondecreasing");
    }
}

void read_marginal(const Reader& r, const json& j, RunConfig& c)
{
    if (!j.contains("marginal_test"))
        return;
    const std::string ptr = "/marginal_test";
    const json& m = j["marginal_test"];
    r.only(m, ptr, {"n", "histogram_bins", "qq_quantiles"});
    c.marginal.n = r.count(m, ptr, "n", c.marginal.n);
    if (c.marginal.n == 0)
        r.fail(ptr + "/n", "must be at least 1");
    c.marginal.histogram_bins = int(r.count(m, ptr, "histogram_bins", c.marginal.histogram_bins));
    c.marginal.qq_quantiles = int(r.count(m, ptr, "qq_quantiles", c.marginal.qq_quantiles));
}

void read_diagnostics(const Reader& r, const json& j, RunConfig& c)
{
    if (!j.contains("diagnostics"))
        return;
    const std::string ptr = "/diagnostics";
    const json& d = j["diagnostics"];
    r.only(d, ptr,
           {"bound_nus", "z_min", "z_max", "z_points", "acceptance_nus", "acceptance_x",
            "proposals_per_x", "sandwich_sets", "sandwich_eps"});
    auto& o = c.diagnostics;
    o.bound_nus = r.numbers(d, ptr, "bound_nus", o.bound_nus);
    o.z_min = r.number(d, ptr, "z_min", o.z_min);
    o.z_max = r.number(d, ptr, "z_max", o.z_max);
    o.z_points = int(r.count(d, ptr, "z_points", o.z_points));
    if (!(o.z_min > 0.0))
        r.fail(ptr + "/z_min", "must be positive");
    if (!(o.z_max > o.z_min))
        r.fail(ptr + "/z_max", "must exceed z_min");
    if (o.z_points < 2)
        r.fail(ptr + "/z_points", "need at least 2 points");
    for (std::size_t i = 0; i < o.bound_nus.size(); ++i)
        if (!(o.bound_nus[i] > 0.0))
            r.fail(ptr + "/bound_nus/" + std::to_string(i), "must be positive");
    o.acceptance_nus = r.numbers(d, ptr, "acceptance_nus", o.acceptance_nus);
    for (std::size_t i = 0; i < o.acceptance_nus.size(); ++i)
        if (!(o.acceptance_nus[i] >= 0.5))
            r.fail(ptr + "/acceptance_nus/" + std::to_string(i),
                   "acceptance bounds need |lambda| >= 0.5");
    o.acceptance_x = r.numbers(d, ptr, "acceptance_x", o.acceptance_x);
    for (std::size_t i = 0; i < o.acceptance_x.size(); ++i)
        if (!(o.acceptance_x[i] > 0.0))
            r.fail(ptr + "/acceptance_x/" + std::to_string(i), "must be positive");
    o.proposals_per_x = r.count(d, ptr, "proposals_per_x", o.proposals_per_x);
    o.sandwich_eps = r.numbers(d, ptr, "sandwich_eps", o.sandwich_eps);
    for (std::size_t i = 0; i < o.sandwich_eps.size(); ++i)
        if (!(o.sandwich_eps[i] > 0.0))
            r.fail(ptr + "/sandwich_eps/" + std::to_string(i), "must be positive");
    if (d.contains("sandwich_sets")) {
        const std::string sp = ptr + "/sandwich_sets";
        const json& sets = d["sandwich_sets"];
        if (!sets.is_array())
            r.fail(sp, "expected an array of {lambda, delta, gamma}");
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const std::string ip = sp + "/" + std::to_string(i);
            r.only(sets[i], ip, {"lambda", "delta", "gamma"});
            for (const char* k : {"lambda", "delta", "gamma"})
                if (!sets[i].contains(k))
                    r.fail(ip, std::string("missing field \"") + k + "\"");
            const GigTriple t{r.number(sets[i], ip, "lambda", 0), r.number(sets[i], ip, "delta", 0),
                              r.number(sets[i], ip, "gamma", 0)};
            r.check(ip, [&] { ghshot::validate(ghshot::GigParams{t.lambda, t.delta, t.gamma}); });
            if (t.gamma == 0.0)
                r.fail(ip + "/gamma", "residual moments need gamma > 0");
            o.sandwich_sets.push_back(t);
        }
    }
}

}  // namespace

int line_of(const std::string& text, const std::string& pointer)
{
    return LineScanner(text, pointer).find();
}

RunConfig parse_config(const std::string& text, const std::string& source)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset to line number.
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + int(std::count(text.begin(), text.begin() + long(end), '\n'));
        std::ostringstream os;
        os << source << ":" << line << ": malformed JSON: " << e.what();
        throw ConfigError("", line, os.str());
    }
    const Reader r(text, source);
    r.only(j, "", {"seed", "threads", "T", "params", "truncation", "envelope", "simulate",
                   "marginal_test", "diagnostics"});
    RunConfig c;
    if (j.contains("seed"))
        c.seed = r.count(j, "", "seed", 0);
    c.threads = int(r.count(j, "", "threads", 0));
    c.T = r.number(j, "", "T", 1.0);
    if (!(c.T > 0.0))
        r.fail("/T", "horizon must be positive");
    read_params(r, j, c);
    read_truncation(r, j, c);
    read_envelope(r, j, c);
    read_simulate(r, j, c);
    read_marginal(r, j, c);
    read_diagnostics(r, j, c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("", 0, path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace ghcli
