#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "finstate/random.hpp"
#include "finstate/serialize.hpp"

using namespace finstate;
using nlohmann::json;

TEST_CASE("system json") {
    const System a({2, 1, 3});
    const json j = to_json(a);
    CHECK(j["blocks"] == std::vector<int>{2, 1, 3});
    CHECK(system_from_json(j) == a);
    CHECK_THROWS_AS(system_from_json(json{{"wrong", 1}}), IoError);
    CHECK_THROWS_AS(system_from_json(json{{"blocks", json::array()}}), InvalidArgumentError);
}

TEST_CASE("state json round trip is exact") {
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
        const State omega = random_state(rng, random_system(rng, 3, 4));
        const State back = state_from_json(to_json(omega));
        REQUIRE(back.system() == omega.system());
        for (int b = 0; b < omega.system().num_blocks(); ++b)
            CHECK((back.block_op(b) - omega.block_op(b)).cwiseAbs().maxCoeff() == 0.0);
    }

    // Round trip through text as well: doubles must be recovered bit for bit.
    const State omega = random_state(rng, System({3, 2}));
    const State back = state_from_json(parse_json(to_json(omega).dump()));
    for (int b = 0; b < omega.system().num_blocks(); ++b)
        CHECK((back.block_op(b) - omega.block_op(b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channel json round trip is exact") {
    Rng rng(72);
    for (int i = 0; i < 10; ++i) {
        const System a = random_system(rng, 3, 3);
        const System b = random_system(rng, 3, 3);
        const Channel f = random_cptp(rng, a, b);
        const Channel back = channel_from_json(parse_json(to_json(f).dump()));
        REQUIRE(back.source() == f.source());
        REQUIRE(back.target() == f.target());
        for (int j = 0; j < b.num_blocks(); ++j)
            for (int i2 = 0; i2 < a.num_blocks(); ++i2)
                CHECK((back.choi(j, i2) - f.choi(j, i2)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("stochastic shorthand") {
    const json j = {{"stochastic", {{0.5, 0.5}, {0.5, 0.5}}}};
    const Channel f = channel_from_json(j);
    Eigen::MatrixXd s(2, 2);
    s << 0.5, 0.5, 0.5, 0.5;
    const Channel direct = from_stochastic_matrix(s);
    CHECK(f.source() == direct.source());
    CHECK(f.target() == direct.target());
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x)
            CHECK(f.choi(y, x)(0, 0) == direct.choi(y, x)(0, 0));
}

TEST_CASE("invalid channels load only without validation") {
    // Trace-decreasing grid: loads unchecked, fails CPTP validation.
    const Channel id = identity_channel(System({2}));
    json j = to_json(id);
    j["choi"][0][0][0][0][0] = 0.5; // shrink one diagonal Choi entry
    CHECK_THROWS_AS(channel_from_json(j), InvalidArgumentError);
    const Channel broken = channel_from_json(j, /*validate=*/false);
    const CptpReport report = validate_cptp(broken);
    CHECK_FALSE(report.tp_ok);
}

TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(parse_json("{not json"), IoError);
    CHECK_THROWS_AS(load_json_file("does_not_exist.json"), IoError);
    CHECK_THROWS_AS(state_from_json(json{{"system", {{"blocks", {1}}}}}), IoError);
    CHECK_THROWS_AS(matrix_from_json(json::array()), IoError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[[1.0]]]")), IoError);
}

TEST_CASE("check report json schema") {
    CheckReport report;
    report.property = "functoriality";
    report.trials = 10;
    report.max_deviation = 1e-12;
    report.pass = true;
    report.tolerance = 1e-9;
    report.seed = 42;
    const json j = to_json(report);
    for (const char* key :
         {"property", "trials", "max_deviation", "pass", "witness", "tolerance", "seed"})
        CHECK(j.contains(key));
    CHECK(j["witness"].is_null());
    CHECK(j["pass"] == true);

    report.pass = false;
    report.witness = json{{"trial", 3}};
    CHECK_FALSE(to_json(report)["witness"].is_null());
}

TEST_CASE("file round trip") {
    const std::string path = "serialize_test_tmp.json";
    const json j = {{"alpha", 0.1 + 0.2}, {"beta", 1e-300}};
    write_json_file(path, j);
    CHECK(load_json_file(path) == j);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_json_file("/nonexistent-dir/x.json", j), IoError);
}
