#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "surfcov/hyperbolic.hpp"

using namespace surfcov;

namespace {

CurveClass cls(const char* text, const SurfaceSig& sig) { return dehn_reduce(parse_word(text, sig)); }

bool close_pm(const Mat2& x, const Mat2& y, double tol) {
    auto diff = [&](double s) {
        return std::max({std::abs(x.a - s * y.a), std::abs(x.b - s * y.b), std::abs(x.c - s * y.c),
                         std::abs(x.d - s * y.d)});
    };
    return std::min(diff(1), diff(-1)) < tol;
}

// All freely reduced words of exactly the given length.
std::vector<Word> all_words(const SurfaceSig& sig, int len) {
    std::vector<Word> out{Word{sig, {}}};
    for (int i = 0; i < len; ++i) {
        std::vector<Word> next;
        for (const Word& w : out)
            for (int x = 0; x < sig.num_letters(); ++x) {
                const Letter l = static_cast<Letter>(x);
                if (!w.empty() && w.letters.back() == inverse(l)) continue;
                Word v = w;
                v.letters.push_back(l);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

}  // namespace

TEST_CASE("fuchsian generators") {
    const SurfaceSig s2(2);
    const auto m = fuchsian_generators(s2);
    CHECK(relator_residual(m) < 1e-9);
    for (int x = 0; x < s2.num_letters(); ++x) {
        const Mat2& g = m.letter_matrix(static_cast<Letter>(x));
        CHECK(std::abs(g.trace()) > 2);
        CHECK(g.det() == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (int g : {3, 4, 5}) CHECK(relator_residual(fuchsian_generators(SurfaceSig(g))) < 1e-9);
    CHECK_THROWS_AS(fuchsian_generators(SurfaceSig(1)), InvalidGenus);
}

TEST_CASE("geodesic lengths") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const double la = geodesic_length(m, cls("a1", s)).length;
    CHECK(la > 0);
    CHECK(geodesic_length(m, cls("A1", s)).length == doctest::Approx(la).epsilon(1e-12));
    CHECK(std::abs(geodesic_length(m, cls("a1^2", s)).length - 2 * la) < 1e-9);
    // same trace at extended precision
    const long double tr = std::fabs(m.evaluate_trace_long(parse_word("a1", s)));
    CHECK(std::abs(static_cast<double>(2 * std::acosh(tr / 2)) - la) < 1e-6);
    // regular octagon: |tr a1| = 2 + sqrt 2
    CHECK(geodesic_length(m, cls("a1", s)).trace_abs == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
    const auto info = geodesic_length(m, cls("a1 b1 A1 B1", s));
    CHECK(info.length == doctest::Approx(2 * std::acosh(info.trace_abs / 2)));
    CHECK_THROWS_AS(geodesic_length(m, cls("a1 A1", s)), TrivialClass);
}

TEST_CASE("relator pieces agree with matrices") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const Word rel = relator_word(s);
    for (int start = 0; start < 8; ++start) {
        Word piece{s, {}};
        for (int i = 0; i < 5; ++i) piece.letters.push_back(rel.letters[(start + i) % 8]);
        const Word shorter = dehn_reduce_linear(piece);
        CHECK(shorter.size() == 3);
        CHECK(close_pm(m.evaluate(piece), m.evaluate(shorter), 1e-9));
    }
}

TEST_CASE("class enumeration against a matrix oracle") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    std::vector<Word> words;
    for (int len = 1; len <= 2; ++len)
        for (const Word& w : all_words(s, len)) words.push_back(w);
    std::vector<Word> conjugators;
    for (int len = 0; len <= 3; ++len)
        for (const Word& w : all_words(s, len)) conjugators.push_back(w);

    std::vector<Mat2> mats;
    for (const Word& w : words) mats.push_back(m.evaluate(w));
    std::vector<int> parent(words.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            if (std::abs(std::abs(mats[i].trace()) - std::abs(mats[j].trace())) > 1e-9) continue;
            if (find_root(parent, i) == find_root(parent, j)) continue;
            for (const Word& h : conjugators) {
                const Mat2 mh = m.evaluate(h);
                const Mat2 c = mh * mats[i] * mh.inverse();
                if (close_pm(c, mats[j], 1e-8) || close_pm(c, mats[j].inverse(), 1e-8)) {
                    parent[find_root(parent, i)] = find_root(parent, j);
                    break;
                }
            }
        }
    std::size_t components = 0;
    for (std::size_t i = 0; i < words.size(); ++i) components += find_root(parent, i) == static_cast<int>(i);
    CHECK(components == 20);
    CHECK(enumerate_classes(s, 2).size() == components);
}

TEST_CASE("self-intersection examples") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    CHECK(self_intersection(m, cls("a1", s)) == 0);
    CHECK(self_intersection(m, cls("a1^2", s)) == 1);
    CHECK(self_intersection(m, cls("a1^3", s)) == 2);
    CHECK(self_intersection(m, cls("a1 b1 A1 B1", s)) == 0);
    CHECK(self_intersection(m, cls("a1 b2", s)) == 1);
    CHECK(self_intersection(m, cls("a1 a1 b1 b1", s)) == 1);
    CHECK_THROWS_AS(self_intersection(m, cls("", s)), TrivialClass);
}

TEST_CASE("intersection examples") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    CHECK(intersection(m, cls("a1", s), cls("b1", s)) == 1);
    CHECK(intersection(m, cls("a1", s), cls("b2", s)) == 0);
    CHECK(intersection(m, cls("a1", s), cls("a1 b1 A1 B1", s)) == 0);
    CHECK(intersection(m, cls("a1^2", s), cls("b1", s)) == 2);

    const auto corpus = enumerate_classes(s, 3);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
    for (int n = 0; n < 20; ++n) {
        const auto& x = corpus[pick(rng)];
        const auto& y = corpus[pick(rng)];
        if (x == y) continue;
        CHECK(intersection(m, x, y) == intersection(m, y, x));
    }
}

TEST_CASE("radius stability") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const double wider = 1.2 * m.tube_radius() - m.circumradius();
    const auto big = m.with_margin(wider);
    CHECK(big.tube_radius() == doctest::Approx(1.2 * m.tube_radius()));
    const auto corpus = enumerate_classes(s, 4);
    for (const auto& c : corpus) CHECK(self_intersection(m, c) == self_intersection(big, c));
    for (std::size_t i = 0; i + 1 < 40; ++i)
        CHECK(intersection(m, corpus[i], corpus[i + 1]) == intersection(big, corpus[i], corpus[i + 1]));
    const auto wide = m.with_margin(2.0);
    for (const auto& c : corpus) CHECK(self_intersection(m, c) == self_intersection(wide, c));
}

TEST_CASE("quad precision agrees") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const auto hp = m.with_high_precision(true);
    for (const auto& c : enumerate_classes(s, 3)) CHECK(self_intersection(m, c) == self_intersection(hp, c));
}

TEST_CASE("power law on simple primitive classes") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    int tested = 0;
    for (const auto& c : enumerate_classes(s, 3)) {
        if (primitive_root(c).exponent != 1 || self_intersection(m, c) != 0) continue;
        ++tested;
        for (int k = 2; k <= 4; ++k) CHECK(self_intersection(m, dehn_reduce(power(c.word, k))) == k - 1);
    }
    CHECK(tested > 0);
}

TEST_CASE("conjugate representatives") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    for (const auto& c : enumerate_classes(s, 4)) {
        if (c.length() < 3) continue;
        CurveClass rotated = c;
        std::rotate(rotated.word.letters.begin(), rotated.word.letters.begin() + 1, rotated.word.letters.end());
        CHECK(self_intersection(m, rotated) == self_intersection(m, c));
        CHECK(geodesic_length(m, rotated).length == doctest::Approx(geodesic_length(m, c).length));
    }
}

TEST_CASE("collar inequality") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    std::vector<CurveClass> simple;
    const auto corpus = enumerate_classes(s, 4);
    for (const auto& c : corpus)
        if (c.length() <= 3 && self_intersection(m, c) == 0) simple.push_back(c);
    REQUIRE(!simple.empty());
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pa(0, simple.size() - 1), pb(0, corpus.size() - 1);
    int checked = 0;
    while (checked < 50) {
        const auto& a = simple[pa(rng)];
        const auto& b = corpus[pb(rng)];
        if (a == b) continue;
        const double la = geodesic_length(m, a).length;
        const double lb = geodesic_length(m, b).length;
        CHECK(lb > intersection(m, a, b) * collar_width(la) - 1e-6);
        ++checked;
    }
    CHECK_THROWS_AS(collar_width(0), DomainError);
}

TEST_CASE("elevations through a subgroup filter") {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const SubgroupFilter p{{{1, 0}, {0, 1}, {0, 1}, {0, 1}}, 0};
    const SubgroupFilter q{{{0, 1}, {1, 0}, {0, 1}, {0, 1}}, 0};
    const auto a1sq = cls("a1^2", s);
    CHECK(self_intersection(m, a1sq, p) == 0);
    CHECK(self_intersection(m, a1sq, q) == 1);
    CHECK(self_intersection(m, cls("a1", s), p) == 0);

    const SubgroupFilter trivial{{{0}, {0}, {0}, {0}}, 0};
    for (const auto& c : enumerate_classes(s, 3))
        CHECK(self_intersection(m, c, trivial) == self_intersection(m, c));

    const SubgroupFilter bad{{{1, 0}, {0, 1}}, 0};
    CHECK_THROWS_AS(self_intersection(m, a1sq, bad), DomainError);
}
