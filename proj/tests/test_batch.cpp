#include "ghshot/batch.hpp"

#include <doctest.h>

#include <cmath>

using namespace ghshot;

namespace {

BatchSpec spec(double lambda)
{
    BatchSpec s;
    s.params.gig = {lambda, 1.0, 0.5};
    s.params.beta = 0.3;
    s.envelope = default_envelope(s.params.gig);
    s.seed = 77;
    return s;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference bit for bit")
{
    const int saved = max_threads();
    for (int threads : {1, 3, 4}) {
        set_threads(threads);
        for (double lambda : {-0.8, -0.3, 1.5}) {
            const BatchSpec s = spec(lambda);
            CAPTURE(threads);
            CAPTURE(lambda);
            BatchSummary a, b;
            CHECK(endpoint_batch(s, 200, &a) == endpoint_batch_serial(s, 200, &b));
            CHECK(a.jumps == b.jumps);
            CHECK(a.stats.dominating.proposed == b.stats.dominating.proposed);
            CHECK(a.eps_final_mean == b.eps_final_mean);

            const std::vector<double> grid = {0.0, 0.25, 0.5, 1.0};
            CHECK(path_batch(s, 50, grid).values == path_batch_serial(s, 50, grid).values);
            CHECK(oracle_batch(s.params, 5, 300) == oracle_batch_serial(s.params, 5, 300));
        }
    }
    set_threads(saved);
}

TEST_CASE("batch summary")
{
    const BatchSpec s = spec(-0.8);
    BatchSummary sum;
    const auto w = endpoint_batch(s, 100, &sum);
    REQUIRE(w.size() == 100);
    for (double v : w)
        CHECK(std::isfinite(v));
    CHECK(sum.jumps > 0);
    CHECK(sum.eps_final_mean.size() == 2);
    for (double e : sum.eps_final_mean)
        CHECK(e > 0.0);
    CHECK(sum.stats.marginal.accepted <= sum.stats.marginal.proposed);

    const PathBatch pb = path_batch(s, 10, {0.0, 1.0}, true);
    CHECK(pb.paths.size() == 10);
    CHECK(pb.summary.jumps > 0);
    REQUIRE(pb.records.size() == 10);
    CHECK(pb.components.size() == 2);
    std::uint64_t jumps = 0;
    for (const PathRecord& r : pb.records) {
        CHECK(r.eps_final.size() == pb.components.size());
        jumps += r.jumps;
    }
    CHECK(jumps == pb.summary.jumps);
    for (const auto& row : pb.values) {
        REQUIRE(row.size() == 2);
        CHECK(row[0] == 0.0);
    }
    CHECK(path_batch(s, 3, {0.0, 1.0}).paths.empty());
}

TEST_CASE("seeds separate streams")
{
    BatchSpec s = spec(-0.8);
    const auto a = endpoint_batch(s, 20);
    s.seed = 78;
    const auto b = endpoint_batch(s, 20);
    CHECK(a != b);
    CHECK(endpoint_batch(spec(-0.8), 20) == a);
    CHECK(gig_sum_batch(s, 20).size() == 20);
}
