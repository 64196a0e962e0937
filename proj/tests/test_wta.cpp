#include <cstdio>
#include <filesystem>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gmpea/rng.hpp"
#include "gmpea/wta.hpp"

using namespace gmpea;

namespace {

// one target with one strike slot, one vehicle, p = 0.8
WTAInstance tiny_instance() {
    WTAInstance inst;
    inst.scenario = "T1";
    inst.n_targets = 1;
    inst.n_vehicles = 1;
    inst.max_strikes = {1};
    inst.p = {{0.8}};
    inst.capacity = {1};
    return inst;
}

}  // namespace

TEST_CASE("built-in scenarios exist for P1..P10 and grow with the index") {
    std::size_t prev_targets = 0, prev_vehicles = 0;
    for (int i = 1; i <= 10; ++i) {
        WTAInstance inst = wta_scenario("P" + std::to_string(i));
        CHECK(inst.n_targets >= 4);
        CHECK(inst.n_vehicles >= 3);
        CHECK(inst.n_targets > prev_targets);
        CHECK(inst.n_vehicles >= prev_vehicles);
        prev_targets = inst.n_targets;
        prev_vehicles = inst.n_vehicles;
        CHECK(inst.max_strikes.size() == inst.n_targets);
        CHECK(inst.capacity.size() == inst.n_vehicles);
        for (const auto& row : inst.p)
            for (double v : row) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
    }
    CHECK_THROWS_AS(wta_scenario("P11"), std::invalid_argument);
    CHECK_THROWS_AS(wta_scenario("Q1"), std::invalid_argument);
}

TEST_CASE("scenario construction is deterministic") {
    WTAInstance a = wta_scenario("P3");
    WTAInstance b = wta_scenario("P3");
    CHECK(a.max_strikes == b.max_strikes);
    CHECK(a.capacity == b.capacity);
    CHECK(a.p == b.p);
}

TEST_CASE("single assigned strike hand example") {
    WTAInstance inst = tiny_instance();
    std::vector<std::uint8_t> x = {1};
    std::vector<double> f(2), g(inst.n_vehicles + inst.n_targets);
    evaluate_wta(inst, x, f, g);
    CHECK(f[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(f[1] == 1.0);
    CHECK(g[0] == 0.0);  // vehicle load == capacity, boundary feasible
    CHECK(g[1] == 0.0);  // one strike == max strikes
}

TEST_CASE("empty assignment gives zero objectives") {
    WTAInstance inst = tiny_instance();
    std::vector<std::uint8_t> x = {0};
    std::vector<double> f(2), g(2);
    evaluate_wta(inst, x, f, g);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 0.0);
    CHECK(g[0] == -1.0);
    CHECK(g[1] == -1.0);
}

TEST_CASE("two independent strikes add interception probabilities") {
    WTAInstance inst;
    inst.scenario = "T2";
    inst.n_targets = 2;
    inst.n_vehicles = 1;
    inst.max_strikes = {1, 1};
    inst.p = {{0.5}, {0.5}};
    inst.capacity = {2};
    std::vector<std::uint8_t> x = {1, 1};
    std::vector<double> f(2), g(inst.n_vehicles + inst.n_targets);
    evaluate_wta(inst, x, f, g);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[1] == 2.0);
}

TEST_CASE("non-binary assignments are rejected") {
    WTAInstance inst = tiny_instance();
    std::vector<std::uint8_t> x = {2};
    std::vector<double> f(2), g(2);
    CHECK_THROWS_AS(evaluate_wta(inst, x, f, g), std::invalid_argument);
}

TEST_CASE("decode thresholds at 0.5 and respects capacity in gene order") {
    WTAInstance inst;
    inst.scenario = "T3";
    inst.n_targets = 1;
    inst.n_vehicles = 1;
    inst.max_strikes = {3};
    inst.p = {{0.5, 0.5, 0.5}};
    inst.capacity = {1};

    // all genes off
    CHECK(decode_wta(std::vector<double>{0.0, 0.2, 0.49}, inst) ==
          std::vector<std::uint8_t>{0, 0, 0});

    // all genes on, capacity 1 -> only the highest gene survives
    CHECK(decode_wta(std::vector<double>{0.6, 0.9, 0.7}, inst) ==
          std::vector<std::uint8_t>{0, 1, 0});

    // ties resolve toward the lower flat index
    CHECK(decode_wta(std::vector<double>{0.8, 0.8, 0.8}, inst) ==
          std::vector<std::uint8_t>{1, 0, 0});

    CHECK_THROWS_AS(decode_wta(std::vector<double>{0.5}, inst),
                    std::invalid_argument);
}

TEST_CASE("decoded assignments never exceed per-vehicle capacity") {
    WTAInstance inst = wta_scenario("P2");
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> genes(inst.gene_count());
        for (double& v : genes) v = rng.uniform();
        std::vector<std::uint8_t> x = decode_wta(genes, inst);
        std::vector<std::size_t> load(inst.n_vehicles, 0);
        for (std::size_t g = 0; g < x.size(); ++g)
            if (x[g]) ++load[g % inst.n_vehicles];
        for (std::size_t m = 0; m < inst.n_vehicles; ++m)
            REQUIRE(load[m] <= inst.capacity[m]);
        // determinism
        REQUIRE(decode_wta(genes, inst) == x);
    }
}

TEST_CASE("gene_index matches the flat slot-major layout") {
    WTAInstance inst = wta_scenario("P1");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < inst.n_targets; ++i)
        for (std::size_t k = 0; k < inst.max_strikes[i]; ++k)
            for (std::size_t m = 0; m < inst.n_vehicles; ++m)
                CHECK(inst.gene_index(i, k, m) == flat++);
    CHECK(flat == inst.gene_count());
}

TEST_CASE("scenario files round-trip through save and load") {
    WTAInstance inst = wta_scenario("P4");
    std::string path =
        (std::filesystem::temp_directory_path() / "wta_roundtrip.txt").string();
    save_wta(inst, path);
    WTAInstance back = load_wta(path);
    CHECK(back.scenario == inst.scenario);
    CHECK(back.n_targets == inst.n_targets);
    CHECK(back.n_vehicles == inst.n_vehicles);
    CHECK(back.max_strikes == inst.max_strikes);
    CHECK(back.capacity == inst.capacity);
    CHECK(back.p == inst.p);
    std::remove(path.c_str());
}

TEST_CASE("the problem wrapper negates the interception objective") {
    WTAInstance inst = tiny_instance();
    ProblemDef p = make_wta_problem(inst);
    CHECK(p.d == 1);
    CHECK(p.m == 2);
    CHECK(p.n_ineq == 2);
    std::vector<double> x = {0.9}, f(2), g(2);
    p.eval_row(x, f, g);
    // decode assigns the strike; minimizing f[0] maximizes interception
    CHECK(f[0] == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(f[1] == 1.0);
}

TEST_CASE("wrapper evaluation equals decode plus evaluate") {
    WTAInstance inst = wta_scenario("P1");
    ProblemDef p = make_wta_problem(inst);
    Rng rng(405);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> genes(inst.gene_count());
        for (double& v : genes) v = rng.uniform();
        std::vector<double> f(2), g(p.n_ineq);
        p.eval_row(genes, f, g);
        std::vector<std::uint8_t> x = decode_wta(genes, inst);
        std::vector<double> f2(2), g2(p.n_ineq);
        evaluate_wta(inst, x, f2, g2);
        REQUIRE(f[0] == -f2[0]);
        REQUIRE(f[1] == f2[1]);
        REQUIRE(g == g2);
    }
}
