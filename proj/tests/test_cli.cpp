#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = surfcov::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(SURFCOV_TEST_DATA) + "/" + name; }

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("census count examples") {
    const Run a = run({"census", "count", "--N", "3", "--k", "1"});
    CHECK(a.code == 0);
    CHECK(parse(a) == nlohmann::json{{"count", 11}});
    CHECK(parse(run({"census", "count", "--N", "2", "--k", "3"}))["count"] == 8);
}

TEST_CASE("pipeline output carries the exact chain constant") {
    const Run r = run({"constants", "pipeline", "--chi", "2", "--degp", "2", "--degq", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"lambda_to_geodesic\": 8957643664") != std::string::npos);
    const auto j = parse(r);
    CHECK(j["bowditch"]["geodesic_gap"] == 1564);
    CHECK(j["M"]["log2"].is_object());
    CHECK(j["K3"]["log2"].is_number());
    CHECK(j["trace"].size() >= 30);

    const auto np = parse(run({"constants", "pipeline", "--chi", "2", "--degp", "2", "--degq", "2", "--no-pi-variant"}));
    CHECK(np["pi_variant"] == false);
    CHECK(parse(run({"constants", "pipeline", "--chi", "2", "--degp", "1", "--degq", "1"}))
              ["covers_necessarily_isomorphic"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run({"covers", "iso", "missing.json", "other.json"}).code == 2);
    CHECK(run({"covers", "check", data("not_a_cover.json")}).code == 2);
    CHECK(run({"selfint", "a1 c1"}).code == 2);
    CHECK(run({"selfint", "a1 A1"}).code == 2);
    CHECK(run({"census", "A", "--L", "7", "--lE", "1"}).code == 2);
    CHECK(run({"census", "A", "--L", "seven"}).code == 2);
    CHECK(run({"constants", "pipeline", "--chi", "2", "--degp", "31", "--degq", "2"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"census", "count", "--N", "3"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    // A valid run whose verdict is negative still exits 0.
    const Run iso = run({"covers", "iso", data("index2_a1.json"), data("index2_b2.json")});
    CHECK(iso.code == 0);
    CHECK(parse(iso)["isomorphic"] == false);
}

TEST_CASE("cover commands") {
    const auto iso = parse(run({"covers", "iso", data("degree3_a.json"), data("degree3_a_relabeled.json")}));
    CHECK(iso["isomorphic"] == true);
    CHECK(iso["join_criterion"] == true);
    CHECK(iso["action_equivalent"] == true);

    const auto w = parse(run({"distinguish", data("index2_a1.json"), data("index2_b2.json"), "--max-len", "4"}));
    CHECK(w["verdict"] == "NonIsomorphicWithWitness");
    CHECK(w["witness_self_intersection"] == 1);
    CHECK(w["verified"] == true);

    const auto same = parse(run({"distinguish", data("degree3_a.json"), data("degree3_a_relabeled.json")}));
    CHECK(same["verdict"] == "Isomorphic");
}

TEST_CASE("selfint") {
    CHECK(parse(run({"selfint", "a1^3"}))["self_intersection"] == 2);
    CHECK(parse(run({"selfint", "a1 b1 A1 b2"}))["class"].is_string());
    const auto lifted = parse(run({"selfint", "b2 b2", "--cover", data("index2_a1.json")}));
    CHECK(lifted["self_intersection"] == 1);
    CHECK(lifted["elevations"].size() == 2);
    CHECK(lifted["any_simple"] == false);
    const Run text = run({"--output", "text", "selfint", "a1"});
    CHECK(text.out.find("self_intersection = 0\n") != std::string::npos);
}

TEST_CASE("census A and verify-c1") {
    const auto a = parse(run({"census", "A", "--L", "8", "--lE", "1"}));
    CHECK(a["A"] == "10");
    CHECK(parse(run({"census", "A", "--L", "0.75e1", "--lE", "1", "--floored"}))["L"] == "15/2");
    const auto c1 = parse(run({"census", "verify-c1", "--xmax", "200"}));
    CHECK(c1["x_star_within_30"] == true);
    CHECK(c1["intermediate_at_30"]["holds"] == "false");
}

TEST_CASE("output is deterministic and independent of jobs") {
    const std::vector<std::string> base = {"spectra", "compare", data("index2_a1.json"), data("index2_b2.json"),
                                           "--N", "2", "--samples", "6", "--maxlen", "3", "--seed", "11"};
    const Run one = run(base);
    REQUIRE(one.code == 0);
    CHECK(run(base).out == one.out);
    auto threaded = base;
    threaded.insert(threaded.begin(), {"--jobs", "3"});
    CHECK(run(threaded).out == one.out);
    const auto j = parse(one);
    CHECK(j["fraction_differ"] == 1.0);
    CHECK(j["per_seed"].size() == 6);
    CHECK(j["per_seed"][0]["seed"] == 11);

    const auto same = parse(run({"spectra", "compare", data("degree3_a.json"), data("degree3_a_relabeled.json"),
                                 "--samples", "4", "--maxlen", "3"}));
    CHECK(same["fraction_differ"] == 0.0);

    const std::vector<std::string> pipe = {"constants", "pipeline", "--chi", "4", "--degp", "2", "--degq", "3"};
    CHECK(run(pipe).out == run(pipe).out);
}
