#include <doctest.h>

#include "surfcov/distinguisher.hpp"

using namespace surfcov;

namespace {

PermCover character_cover(std::array<int, 4> chi) {
    RawCover raw{2, 2, {}};
    for (int v : chi) raw.perms.push_back(v ? std::vector<int>{2, 1} : std::vector<int>{1, 2});
    return validate_cover(raw);
}

CurveClass cls(const char* text, const SurfaceSig& sig) { return dehn_reduce(parse_word(text, sig)); }

}  // namespace

TEST_CASE("isomorphic covers short-circuit") {
    const auto m = fuchsian_generators(SurfaceSig(2));
    const PermCover p = character_cover({1, 0, 0, 0});
    const auto r = find_witness(m, p, p, 4);
    CHECK(r.verdict == Verdict::Isomorphic);
    CHECK_FALSE(r.witness);
    CHECK(r.budget_used == 0);
}

TEST_CASE("witness for distinct index-2 covers") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const PermCover p = character_cover({1, 0, 0, 0});
    const PermCover q = character_cover({0, 1, 0, 0});
    const auto r = find_witness(m, p, q, 2);
    REQUIRE(r.verdict == Verdict::NonIsomorphicWithWitness);
    CHECK(*r.witness == cls("a1^2", s));
    CHECK(*r.witness_self_intersection == 1);
    CHECK(r.elevations_p.any_simple() != r.elevations_q.any_simple());
    CHECK(verify_witness(m, p, q, *r.witness));
    CHECK(to_string(r.verdict) == "NonIsomorphicWithWitness");

    const auto longer = find_witness(m, p, q, 4);
    CHECK(*longer.witness == *r.witness);

    const auto none = find_witness(m, p, q, 1);
    CHECK(none.verdict == Verdict::NonIsomorphicNoWitnessFound);
}

TEST_CASE("verify_witness") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const PermCover p = character_cover({1, 0, 0, 0});
    const PermCover q = character_cover({0, 1, 0, 0});
    CHECK(verify_witness(m, p, q, cls("a1^2", s)));
    CHECK_FALSE(verify_witness(m, p, p, cls("a1^2", s)));
    CHECK_FALSE(verify_witness(m, p, q, cls("a1", s)));
    CHECK_THROWS_AS(verify_witness(m, p, q, cls("", s)), TrivialClass);
}

TEST_CASE("every pair of index-2 covers") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const auto covers = enumerate_covers(s, 2);
    REQUIRE(covers.size() == 15);
    for (std::size_t i = 0; i < covers.size(); ++i)
        for (std::size_t j = i + 1; j < covers.size(); ++j) {
            const auto r = find_witness(m, covers[i], covers[j], 4);
            REQUIRE(r.verdict == Verdict::NonIsomorphicWithWitness);
            CHECK(*r.witness_self_intersection == 1);
            CHECK(verify_witness(m, covers[i], covers[j], *r.witness));
        }
}

TEST_CASE("degree-3 pairs") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const auto covers = enumerate_covers(s, 3);
    int witnessed = 0;
    for (std::size_t i = 0; i < covers.size(); i += 97)
        for (std::size_t j = i + 1; j < covers.size(); j += 89) {
            const auto r = find_witness(m, covers[i], covers[j], 3);
            CHECK((r.verdict == Verdict::Isomorphic) == isomorphic_covers(covers[i], covers[j]));
            if (r.witness) {
                ++witnessed;
                CHECK(verify_witness(m, covers[i], covers[j], *r.witness));
            }
        }
    CHECK(witnessed > 0);
}
