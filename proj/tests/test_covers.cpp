#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "surfcov/covers.hpp"

using namespace surfcov;

namespace {

RawCover raw2(std::vector<std::vector<int>> perms) { return {2, static_cast<int>(perms[0].size()), std::move(perms)}; }

CurveClass cls(const char* text, const SurfaceSig& sig) { return dehn_reduce(parse_word(text, sig)); }

// Index-2 cover from a Z/2 character given by its values on a1, b1, a2, b2.
PermCover character_cover(std::array<int, 4> chi) {
    std::vector<std::vector<int>> perms;
    for (int v : chi) perms.push_back(v ? std::vector<int>{2, 1} : std::vector<int>{1, 2});
    return validate_cover(raw2(perms));
}

}  // namespace

TEST_CASE("validate_cover") {
    const SurfaceSig s(2);
    CHECK(validate_cover({2, 1, {{1}, {1}, {1}, {1}}}).degree == 1);
    CHECK(validate_cover(raw2({{2, 1}, {1, 2}, {1, 2}, {1, 2}})).degree == 2);
    CHECK_THROWS_AS(validate_cover(raw2({{1, 2}, {1, 2}, {1, 2}, {1, 2}})), NotTransitive);
    CHECK_THROWS_AS(validate_cover(raw2({{1, 1}, {1, 2}, {1, 2}, {1, 2}})), BadPermutation);
    CHECK_THROWS_AS(validate_cover(raw2({{2, 1}, {1, 2}, {1, 2}})), BadPermutation);
    CHECK_THROWS_AS(validate_cover(raw2({{2, 1, 3}, {1, 3, 2}, {1, 2, 3}, {1, 2, 3}})), RelatorNotKilled);
    CHECK_THROWS_AS(validate_cover({1, 1, {{1}, {1}}}), InvalidGenus);
}

TEST_CASE("cover json") {
    const char* text = R"({"genus": 2, "degree": 2, "perms": {"a1": [2, 1], "b1": [1, 2], "a2": [1, 2], "b2": [1, 2]}})";
    const PermCover c = parse_cover_json(text);
    CHECK(c.degree == 2);
    CHECK(c.gen_perms[0] == std::vector<int>{1, 0});
    CHECK(parse_cover_json(cover_to_json(c)).gen_perms == c.gen_perms);
    CHECK(cover_to_json(c) == R"({"genus":2,"degree":2,"perms":{"a1":[2,1],"b1":[1,2],"a2":[1,2],"b2":[1,2]}})");
    CHECK_THROWS_AS(parse_cover_json("{"), SyntaxError);
    CHECK_THROWS_AS(parse_cover_json(R"({"genus": 2, "degree": 1})"), SyntaxError);
    CHECK_THROWS_AS(parse_cover_json(R"({"genus":2,"degree":1,"perms":{"a1":[1],"b1":[1],"a2":[1]}})"), BadPermutation);
    CHECK_THROWS_AS(parse_cover_json(R"({"genus":2,"degree":1,"perms":{"a1":[1],"b1":[1],"a2":[1],"b2":[1],"a3":[1]}})"),
                    UnknownGenerator);
    CHECK_THROWS_AS(load_cover_file("/nonexistent/cover.json"), DomainError);
}

TEST_CASE("relabel and word action") {
    const SurfaceSig s(2);
    const PermCover c = validate_cover(raw2({{2, 3, 1}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}}));
    const PermCover r = relabel(c, {2, 0, 1});
    CHECK(action_equivalent(c, r));
    const Word w = parse_word("a1 a1 B1", s);
    for (int i = 0; i < 3; ++i) CHECK(c.word_perm(w)[static_cast<std::size_t>(i)] == c.act(i, w));
    CHECK(c.act(0, parse_word("a1 A1", s)) == 0);
}

TEST_CASE("corpus counts") {
    const SurfaceSig s(2);
    CHECK(enumerate_covers(s, 1).size() == 1);
    CHECK(enumerate_covers(s, 2).size() == 15);
    // 486 homomorphisms to S3 minus 46 intransitive ones
    CHECK(enumerate_covers(s, 3).size() == 440);
    CHECK_THROWS_AS(enumerate_covers(SurfaceSig(3), 4), BudgetTooLarge);
}

TEST_CASE("elevation degrees") {
    const SurfaceSig s(2);
    const PermCover triv = trivial_cover(s);
    const PermCover p = character_cover({1, 0, 0, 0});
    CHECK(elevation_degrees(triv, cls("a1 b2", s)) == std::vector<int>{1});
    CHECK(elevation_degrees(p, cls("a1", s)) == std::vector<int>{2});
    CHECK(elevation_degrees(p, cls("a1^2", s)) == std::vector<int>{1, 1});
    const auto corpus = enumerate_covers(s, 3);
    for (std::size_t i = 0; i < corpus.size(); i += 37)
        for (const auto& c : enumerate_classes(s, 3)) {
            const auto d = elevation_degrees(corpus[i], c);
            CHECK(std::accumulate(d.begin(), d.end(), 0) == 3);
        }
}

TEST_CASE("simple elevations") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const PermCover p = character_cover({1, 0, 0, 0});
    const PermCover q = character_cover({0, 1, 0, 0});
    const auto a1sq = cls("a1^2", s);

    ElevationReport rp, rq;
    CHECK(has_simple_elevation(m, p, a1sq, &rp));
    CHECK_FALSE(has_simple_elevation(m, q, a1sq, &rq));
    REQUIRE(rp.entries.size() == 2);
    REQUIRE(rq.entries.size() == 2);
    for (const auto& e : rq.entries) CHECK(e.self_intersection == 1);
    for (const auto& e : rp.entries) CHECK(e.cycle_length == 1);

    // simple base curves elevate simply in every cover
    const auto corpus = enumerate_covers(s, 3);
    for (const auto& c : enumerate_classes(s, 2)) {
        if (self_intersection(m, c) != 0) continue;
        for (std::size_t i = 0; i < corpus.size(); i += 53) {
            ElevationReport r;
            CHECK(has_simple_elevation(m, corpus[i], c, &r));
            for (const auto& e : r.entries) CHECK(e.simple);
        }
    }
    CHECK_THROWS_AS(elevation_report(m, p, cls("", s)), TrivialClass);
}

TEST_CASE("connected double elevations on long axes") {
    // A connected elevation of degree 2 covers each double point twice. These
    // classes once gave an odd crossing count in double precision and a spurious
    // close call in quad.
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const PermCover p = character_cover({0, 0, 0, 1});  // b2 is odd in each word
    for (const char* w : {"a1 a1 b2 A1 b1", "b1 b2 B1 b2 B1 b2", "a1 B2 b1 B2 b1 B2", "b1 a2 b1 a2 a2 b2"}) {
        const auto c = cls(w, s);
        const auto r = elevation_report(m, p, c);
        REQUIRE(r.entries.size() == 1);
        CHECK(r.entries[0].self_intersection == 2 * self_intersection(m, c));
        CHECK(self_intersection(m.with_high_precision(true), c, p.filter()) == r.entries[0].self_intersection);
    }
}

TEST_CASE("regular covers") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    for (const auto& c : enumerate_covers(s, 2)) CHECK(is_regular(c));
    const auto corpus = enumerate_covers(s, 3);
    const auto classes = enumerate_classes(s, 3);
    int regular = 0;
    for (const auto& c : corpus) {
        if (!is_regular(c)) continue;
        ++regular;
        for (const auto& w : classes) {
            const auto d = elevation_degrees(c, w);
            CHECK(d.front() == d.back());
        }
    }
    // 40 normal index-3 subgroups, each realised by 2 labelled actions
    CHECK(regular == 80);

    const PermCover reg = corpus[0];
    REQUIRE(is_regular(reg));
    for (const auto& w : enumerate_classes(s, 2)) {
        const auto r = elevation_report(m, reg, w);
        for (const auto& e : r.entries) CHECK(e.simple == r.entries.front().simple);
    }
}

TEST_CASE("galois diamond") {
    const SurfaceSig s(2);
    const PermCover triv = trivial_cover(s);
    const auto dt = galois_diamond(triv, triv);
    CHECK(dt.order() == 1);
    CHECK(dt.A == dt.B);

    const PermCover p = character_cover({1, 0, 0, 0});
    const PermCover q = character_cover({0, 1, 0, 0});
    const auto d = galois_diamond(p, q);
    CHECK(d.order() == 4);
    CHECK(d.A.size() == 2);
    CHECK(d.B.size() == 2);
    CHECK(d.A != d.B);
    for (const auto& h : d.H) CHECK(h.size() == 4);
    CHECK_FALSE(d.join_criterion());

    const auto dp = galois_diamond(p, p);
    CHECK(dp.A == dp.B);
    CHECK(dp.transversal.front() == 0);
    CHECK(dp.H.front() == dp.B);

    const auto corpus = enumerate_covers(s, 3);
    for (std::size_t i = 0; i < corpus.size(); i += 11)
        for (std::size_t j = 0; j < corpus.size(); j += 29) {
            const auto g = galois_diamond(corpus[i], corpus[j]);
            CHECK(g.index_of_A() == 3);
            CHECK(g.index_of_B() == 3);
            CHECK(g.order() <= 720);
            for (const auto& h : g.H) CHECK(std::includes(h.begin(), h.end(), g.B.begin(), g.B.end()));
        }
}

TEST_CASE("isomorphism decisions") {
    const SurfaceSig s(2);
    const PermCover p = character_cover({1, 0, 0, 0});
    const PermCover q = character_cover({0, 1, 0, 0});
    CHECK(isomorphic_covers(p, p));
    CHECK_FALSE(isomorphic_covers(p, q));
    const PermCover c = validate_cover(raw2({{2, 3, 1}, {1, 2, 3}, {3, 1, 2}, {1, 2, 3}}));
    CHECK(isomorphic_covers(c, relabel(c, {1, 2, 0})));
    CHECK(isomorphic_covers(c, relabel(c, {1, 0, 2})));
    // a degree-2 cover factoring through a degree-4 one is not isomorphic to it
    CHECK_FALSE(isomorphic_covers(trivial_cover(s), p));
}

TEST_CASE("isomorphism classes of the degree-3 corpus") {
    const SurfaceSig s(2);
    const auto corpus = enumerate_covers(s, 3);
    const std::size_t n = corpus.size();
    std::vector<int> label(n, -1);
    int classes = 0, regular_classes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] >= 0) continue;
        label[i] = classes;
        regular_classes += is_regular(corpus[i]);
        for (std::size_t j = i + 1; j < n; ++j)
            if (isomorphic_covers(corpus[i], corpus[j])) {
                CHECK(label[j] < 0);
                label[j] = classes;
            }
        ++classes;
    }
    // 220 index-3 subgroups: 40 normal, 180 in conjugacy classes of size 3
    CHECK(classes == 100);
    CHECK(regular_classes == 40);
}
