#include "commands.hpp"
#include "config.hpp"

#include <doctest.h>

#include <cmath>

using namespace ghcli;

namespace {

ConfigError error_of(const std::string& text)
{
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("full configuration")
{
    const RunConfig c = parse_config(R"({
  "seed": 18446744073709551615,
  "threads": 2,
  "T": 2.0,
  "params": {"lambda": -0.8, "delta": 1.5, "gamma": 0.1, "beta": 0.3, "sigma": 0.9},
  "truncation": {"tau": 0.1, "p_T": 0.02, "eps_ratio": 0.25, "inject_residual": false},
  "envelope": {"squeeze": false},
  "simulate": {"n_paths": 5, "grid": {"start": 0, "stop": 2, "points": 5}},
  "marginal_test": {"n": 1000, "histogram_bins": 0},
  "diagnostics": {"sandwich_sets": [{"lambda": 1.5, "delta": 2, "gamma": 1}]}
})");
    CHECK(c.seed == 18446744073709551615ull);
    CHECK(c.threads == 2);
    CHECK(c.T == 2.0);
    CHECK(c.params.gig.lambda == -0.8);
    CHECK(c.params.sigma == 0.9);
    CHECK(c.truncation.tau == 0.1);
    CHECK(c.truncation.eps_ratio == 0.25);
    CHECK_FALSE(c.truncation.inject_residual);
    CHECK_FALSE(c.envelope().squeeze);
    CHECK(c.simulate.grid == std::vector<double>{0, 0.5, 1, 1.5, 2});
    CHECK(c.marginal.n == 1000);
    CHECK(c.marginal.histogram_bins == 0);
    REQUIRE(c.diagnostics.sandwich_sets.size() == 1);
    CHECK(c.diagnostics.sandwich_sets[0].delta == 2.0);
}

TEST_CASE("defaults and the alpha form")
{
    const RunConfig c =
        parse_config(R"({"params": {"lambda": -0.5, "alpha": 2, "beta": 1.2, "delta": 1}})");
    CHECK_FALSE(c.seed.has_value());
    CHECK(c.params.gig.gamma == doctest::Approx(1.6));
    CHECK(c.simulate.n_paths == 1);
    CHECK(c.simulate.grid.empty());
    CHECK(c.truncation.tau == 0.01);
    CHECK(c.envelope().squeeze);
}

TEST_CASE("diagnostics name the field and line")
{
    {
        const ConfigError e = error_of("{\n  \"params\": {\n    \"lambda\": -0.8,\n    \"delat\": 1\n  }\n}");
        CHECK(e.field() == "/params/delat");
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("cfg.json:4") == 0);
    }
    {
        const ConfigError e = error_of(
            "{\n \"params\": {\"lambda\": -0.8, \"delta\": 1, \"gamma\": 0.1},\n \"truncation\": {\n  \"tau\": \"small\"\n }\n}");
        CHECK(e.field() == "/truncation/tau");
        CHECK(e.line() == 4);
    }
    {
        const ConfigError e = error_of("{\n \"params\": {\"lambda\": 0, \"delta\": 1, \"gamma\": 0.1}\n}");
        CHECK(e.field() == "/params");
        CHECK(e.line() == 2);
    }
    {
        const ConfigError e = error_of(
            "{\"params\": {\"lambda\": -0.8, \"delta\": 1, \"gamma\": 0.1},\n"
            " \"simulate\": {\"grid\": [0,\n 0.5,\n 1.5]}}");
        CHECK(e.field() == "/simulate/grid/2");
        CHECK(e.line() == 4);
    }
    {
        const ConfigError e = error_of("{\n \"params\": {\n  \"lambda\": -0.8,\n  \"delta\": 1,\n}\n}");
        CHECK(e.line() == 5);
        CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
    }
}

TEST_CASE("rejected configurations")
{
    const std::string p = R"("params": {"lambda": -0.8, "delta": 1, "gamma": 0.1})";
    CHECK(error_of("{}").field().empty());
    CHECK(error_of("{" + p + R"(, "seed": -1})").field() == "/seed");
    CHECK(error_of("{" + p + R"(, "T": 0})").field() == "/T");
    CHECK(error_of("{" + p + R"(, "truncation": {"p_T": 1.5}})").field() == "/truncation");
    CHECK(error_of("{" + p + R"(, "simulate": {"n_paths": 0}})").field() == "/simulate/n_paths");
    CHECK(error_of("{" + p + R"(, "envelope": {"z1": -1}})").field() == "/envelope/z1");
    CHECK(error_of("{" + p + R"(, "envelope": {"squeeze": 1}})").field() == "/envelope/squeeze");
    CHECK(error_of("{" + p + R"(, "diagnostics": {"acceptance_nus": [0.3]}})").field() ==
          "/diagnostics/acceptance_nus/0");
    CHECK(error_of(R"({"params": {"lambda": -0.8, "delta": 1, "gamma": 0.1, "alpha": 2}})").field() ==
          "/params/alpha");
    CHECK(error_of(R"({"params": {"lambda": -0.8, "delta": 1}})").field() == "/params");
    CHECK(error_of(R"({"params": {"lambda": -0.8, "alpha": 1, "beta": 1, "delta": 1}})").field() ==
          "/params/alpha");
}

TEST_CASE("line lookup")
{
    const std::string text = "{\n \"a\": [1,\n  {\"b/c\": 2}],\n \"d\": \"x\\\"y\"\n}";
    CHECK(line_of(text, "") == 1);
    CHECK(line_of(text, "/a") == 2);
    CHECK(line_of(text, "/a/1/b~1c") == 3);
    CHECK(line_of(text, "/d") == 4);
    CHECK(line_of(text, "/missing") == 0);
}

TEST_CASE("CSV and number formatting")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_number(0.1) == "0.1");
    CHECK(csv_number(0.0) == "0");
    CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(round_sig(9.6543e-5, 3) == doctest::Approx(9.65e-5).epsilon(1e-12));
    CHECK(round_sig(123456.0, 3) == 123000.0);
    CHECK(round_sig(0.0, 3) == 0.0);
}
