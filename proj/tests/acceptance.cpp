// Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "surfcov/census.hpp"
#include "surfcov/constants.hpp"
#include "surfcov/covers.hpp"
#include "surfcov/distinguisher.hpp"
#include "surfcov/hyperbolic.hpp"
#include "surfcov/trace_spectra.hpp"

using namespace surfcov;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << "failed: " << what << "; ";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CurveClass cls(const char* text, const SurfaceSig& sig) { return dehn_reduce(parse_word(text, sig)); }

PermCover character_cover(std::array<int, 4> chi) {
    RawCover raw{2, 2, {}};
    for (int v : chi) raw.perms.push_back(v ? std::vector<int>{2, 1} : std::vector<int>{1, 2});
    return validate_cover(raw);
}

// Witnesses found in criterion 6, reused by criterion 10.
std::vector<CurveClass> g_witnesses;
std::vector<long> g_witness_self_intersections;

// 1. Curve-graph chain constants by integer arithmetic.
void exact_constants(Outcome& o) {
    const auto t0 = Clock::now();
    const BowditchChain b = bowditch_chain();
    const double elapsed = seconds_since(t0);
    // independent integer oracle: K = 18 * 20 + 2, delta = 17
    const std::uint64_t K = 18 * 20 + 2;
    const std::uint64_t lambda = 92 * K * K * (2 * K + 19);
    o.require(K == 362 && b.K_bow == 362, "K_bow = 362");
    o.require(lambda == 8957643664ULL, "92 * 362^2 * 743 = 8957643664");
    o.require(b.lambda_to_geodesic == mpz_class("8957643664"), "lambda_to_geodesic = 8957643664");
    o.require(b.geodesic_gap == 1564 && 92 * 17 == 1564, "geodesic_gap = 92 * 17 = 1564");
    o.require(elapsed < 1e-3, "under 1 ms");
    o.detail << "lambda_to_geodesic = " << b.lambda_to_geodesic.get_str() << ", geodesic_gap = " << b.geodesic_gap
             << ", " << std::setprecision(3) << elapsed * 1e6 << " us";
}

// 2. census_count against enumeration.
void census_exactness(Outcome& o) {
    long mismatches = 0;
    for (long k = 1; k <= 50; ++k)
        for (long N = 1; N <= 50; ++N) mismatches += census_count(N, k) != census_enumerate(N, k, CensusFilter::Stated);
    o.require(mismatches == 0, "census_count equals enumeration for k, N <= 50");
    o.require(census_count(3, 1) == 11, "count(N=3, k=1) = 11");
    o.require(census_count(2, 3) == 8, "count(N=2, k=3) = 8");
    o.detail << "2500 (N, k) pairs, " << mismatches << " mismatches";
}

// 3. Totient and Moebius identities, then the bound inequalities.
void summatory_identities(Outcome& o) {
    const SummatorySweep s = summatory_sweep(100000);
    o.require(s.ok(), "Phi and Psi agree for x <= 1e5");
    const BoundSweep b = bounds_sweep(2, 10000);
    o.require(b.all_hold(), "bounds hold on [2, 1e4]");
    o.detail << "Phi mismatches " << s.Phi_mismatches << ", Psi mismatches "
             << s.Psi_increment_mismatches + s.Psi_modular_mismatches + s.Psi_exact_mismatches
             << ", bound failures " << std::accumulate(b.failures.begin(), b.failures.end(), 0L) << ", undecided "
             << b.undecided;
}

// 4. Quadratic lower bound on the census with l(E) = 1.
void rivin_lower_bound(Outcome& o) {
    const C1ScanReport r = c1_threshold_scan(1, 2000);
    o.require(r.x_star >= 1 && r.x_star <= 30 && r.x_star_within_30, "x_star <= 30");
    o.require(r.undecided == 0, "no undecided comparisons");
    o.require(r.holds_at_30, "bound holds at x = 30");
    o.require(r.A_at_30 == A_of_L(120, 1), "A(120) consistent");
    o.detail << "x_star = " << r.x_star << ", A(120) = " << std::setprecision(6) << r.A_at_30.get_d()
             << " vs c1 L^2 = " << r.c1L2_at_30 << "; intermediate inequality at x = 30: "
             << to_string(r.intermediate_at_30.holds) << " (lhs " << r.intermediate_at_30.lhs << ", rhs "
             << r.intermediate_at_30.rhs << ")";
}

// 5. The join criterion against action equivalence on the degree-2 and degree-3 corpus.
void cover_isomorphism(Outcome& o) {
    const SurfaceSig s(2);
    std::vector<PermCover> corpus = enumerate_covers(s, 2);
    const auto three = enumerate_covers(s, 3);
    corpus.insert(corpus.end(), three.begin(), three.end());
    const std::size_t n = corpus.size();
    std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
    long disagreements = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool act = action_equivalent(corpus[i], corpus[j]);
            bool join = false;
            if (corpus[i].degree == corpus[j].degree) join = galois_diamond(corpus[i], corpus[j]).join_criterion();
            disagreements += act != join;
            iso[i][j] = isomorphic_covers(corpus[i], corpus[j]);
            ++pairs;
        }
    long reflexive = 0, symmetric = 0, transitive = 0;
    for (std::size_t i = 0; i < n; ++i) {
        reflexive += !iso[i][i];
        for (std::size_t j = 0; j < n; ++j) {
            symmetric += iso[i][j] != iso[j][i];
            // transitivity: equivalent covers have the same equivalents
            if (iso[i][j] && iso[i] != iso[j]) ++transitive;
        }
    }
    o.require(disagreements == 0, "join criterion agrees with action equivalence");
    o.require(reflexive == 0 && symmetric == 0 && transitive == 0, "isomorphism is an equivalence relation");
    o.detail << n << " covers, " << pairs << " ordered pairs, " << disagreements << " disagreements, violations "
             << reflexive << "/" << symmetric << "/" << transitive;
}

// 6. Witnesses for every pair of distinct index-2 covers.
void distinguishing_witness(Outcome& o) {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const auto covers = enumerate_covers(s, 2);
    o.require(covers.size() == 15, "15 index-2 covers");
    long pairs = 0, verified = 0;
    double slowest = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
        o.require(is_regular(covers[i]), "index-2 covers are normal");
        for (std::size_t j = i + 1; j < covers.size(); ++j) {
            const auto t0 = Clock::now();
            const WitnessReport r = find_witness(m, covers[i], covers[j], 4);
            ++pairs;
            if (r.verdict != Verdict::NonIsomorphicWithWitness) {
                o.require(false, "witness found for every pair");
                continue;
            }
            o.require(*r.witness_self_intersection == 1, "witness self-intersection 1");
            o.require(self_intersection(m, *r.witness) == 1, "recomputed self-intersection 1");
            const bool ok = verify_witness(m, covers[i], covers[j], *r.witness);
            o.require(ok, "verify_witness");
            verified += ok;
            g_witnesses.push_back(*r.witness);
            g_witness_self_intersections.push_back(*r.witness_self_intersection);
            slowest = std::max(slowest, seconds_since(t0));
        }
    }
    o.require(slowest < 60, "under 60 s per pair");
    o.detail << verified << "/" << pairs << " pairs verified, slowest " << std::setprecision(3) << slowest << " s";
}

// 7. Geometry examples, radius stability and the collar inequality.
void geometry(Outcome& o) {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const auto wide = m.with_margin(1.2 * m.tube_radius() - m.circumradius());
    for (const auto* model : {&m, &wide}) {
        o.require(self_intersection(*model, cls("a1", s)) == 0, "i(a1, a1) = 0");
        for (int k = 1; k <= 3; ++k)
            o.require(self_intersection(*model, dehn_reduce(power(parse_word("a1", s), k))) == k - 1,
                      "i(a1^k, a1^k) = k - 1");
        o.require(intersection(*model, cls("a1", s), cls("b1", s)) == 1, "i(a1, b1) = 1");
        o.require(intersection(*model, cls("a1", s), cls("b2", s)) == 0, "i(a1, b2) = 0");
    }
    const auto corpus = enumerate_classes(s, 4);
    long unstable = 0;
    for (const auto& c : corpus) unstable += self_intersection(m, c) != self_intersection(wide, c);
    o.require(unstable == 0, "self-intersections stable under +20% radius");

    std::vector<CurveClass> simple;
    for (const auto& c : corpus)
        if (c.length() <= 3 && self_intersection(m, c) == 0) simple.push_back(c);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pa(0, simple.size() - 1), pb(0, corpus.size() - 1);
    int checked = 0;
    long violations = 0, unstable_pairs = 0;
    double tightest = INFINITY;
    while (checked < 50) {
        const auto& a = simple[pa(rng)];
        const auto& b = corpus[pb(rng)];
        if (a == b) continue;
        const long i = intersection(m, a, b);
        unstable_pairs += i != intersection(wide, a, b);
        const double slack = geodesic_length(m, b).length - i * collar_width(geodesic_length(m, a).length);
        violations += slack < -1e-6;
        tightest = std::min(tightest, slack);
        ++checked;
    }
    o.require(unstable_pairs == 0, "intersections stable under +20% radius");
    o.require(violations == 0, "collar inequality on 50 pairs");
    o.detail << corpus.size() << " classes stable, 50 collar pairs, least slack " << std::setprecision(4)
             << tightest;
}

// 8. Generic representations separate distinct covers and never separate isomorphic ones.
void trace_spectra(Outcome& o) {
    const SurfaceSig s(2);
    const auto m = fuchsian_generators(s);
    const PermCover p = character_cover({1, 0, 0, 0}), q = character_cover({0, 0, 1, 1});
    const GenericReport diff = distinguish_generic(m, p, q, 2, 100, 6, 7);
    const GenericReport same = distinguish_generic(m, p, relabel(p, {1, 0}), 2, 100, 6, 7);
    o.require(diff.fraction_differ && *diff.fraction_differ >= 0.99, "distinct pair differs in >= 99% of samples");
    o.require(same.fraction_differ && *same.fraction_differ == 0.0, "isomorphic pair differs in 0% of samples");
    o.detail << "distinct " << *diff.fraction_differ * 100 << "% (" << diff.elevations_p << " and "
             << diff.elevations_q << " simple elevations), isomorphic " << *same.fraction_differ * 100 << "%";
}

// 9. The trace identity over Q and determinants through homology.
void exact_algebra(Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
    int checked = 0;
    long failures = 0;
    while (checked < 10000) {
        mpq_class x(num(rng), den(rng)), z(num(rng), den(rng));
        x.canonicalize();
        z.canonicalize();
        if (z == 0 || z == 1 || z == -1) continue;
        const auto r = annoying_algebra_check(x, std::nullopt, z);
        // independent residual: -(z - 1)^3 (z + 1) / z^2
        const mpq_class expected = -(z - 1) * (z - 1) * (z - 1) * (z + 1) / (z * z);
        failures += !r.ok() || r.difference != expected;
        ++checked;
    }
    o.require(failures == 0, "identity on 1e4 rationals");

    const SurfaceSig s(2);
    const auto deg2 = enumerate_covers(s, 2), deg3 = enumerate_covers(s, 3);
    std::uniform_int_distribution<std::size_t> pick2(0, deg2.size() - 1), pick3(0, deg3.size() - 1);
    std::uniform_int_distribution<int> letter(0, s.num_letters() - 1);
    const Word rel = relator_word(s);
    long det_failures = 0;
    for (int n = 0; n < 1000; ++n) {
        const PermCover& c = n % 2 ? deg3[pick3(rng)] : deg2[pick2(rng)];
        const bool doubled = n % 4 >= 2;
        const auto rep = block_rep_from_finite_quotient(c, permutation_representation(c.degree),
                                                        (doubled ? 2 * c.degree : c.degree) + 2,
                                                        doubled ? BlockVariant::Doubled : BlockVariant::Single);
        Word w{s, {}};
        for (int i = 0; i < 10; ++i) w.letters.push_back(static_cast<Letter>(letter(rng)));
        // same letters reordered, with the relator spliced in: homologous to w
        Word v = w;
        std::shuffle(v.letters.begin(), v.letters.end(), rng);
        v.letters.insert(v.letters.begin() + static_cast<long>(rng() % (v.size() + 1)), rel.letters.begin(),
                         rel.letters.end());
        det_failures += !det_homology_check(rep, w, v);
    }
    o.require(det_failures == 0, "det_homology_check on 1e3 block reps");
    o.detail << checked << " rationals, " << failures << " failures; 1000 block reps, " << det_failures
             << " failures";
}

bool finite(const LogScalar& v) { return std::isfinite(v.top()) && v.top() > 0; }

// 10. Pipeline sanity.
void pipeline_sanity(Outcome& o) {
    const ConstantsReport r = pipeline_M(2, 2, 2);
    for (const LogScalar* v : {&r.core_index_bound, &r.d2_factorial, &r.D_tang, &r.K1, &r.K2, &r.K3,
                               &r.N_threshold, &r.L1, &r.L2, &r.M1, &r.M2, &r.M})
        o.require(finite(*v), "finite report field");
    const char* expected[] = {"core_index_bound", "d2_factorial", "K_bow", "geodesic_gap", "lambda_to_geodesic",
                              "W0_lower", "D_tang", "c1_Y", "c2_X", "c2_W_max", "d_power", "L1", "M1", "L2",
                              "len_alpha_tilde", "bers_length", "len_eta_tilde", "K1", "E", "hempel_offset",
                              "apt_constant", "K2", "n_bound", "K3", "N_threshold", "length_v_N",
                              "length_v_N_on_Z", "i_v_N_alpha", "length_gamma", "M2", "M"};
    bool complete = r.trace.size() == std::size(expected);
    for (std::size_t i = 0; complete && i < r.trace.size(); ++i)
        complete = r.trace[i].name == expected[i] && !r.trace[i].formula.empty() && finite(r.trace[i].value);
    o.require(complete, "complete derivation trace");
    o.require(r.trace.back().value == r.M, "trace ends at M");
    o.require(replay_matches(r), "trace replays");

    LogScalar M[3][3][3];
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) M[a][p][q] = pipeline_M(2 * (a + 1), p + 1, q + 1).M;
    long breaks = 0;
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                if (a < 2) breaks += !(M[a][p][q] <= M[a + 1][p][q]);
                if (p < 2) breaks += !(M[a][p][q] <= M[a][p + 1][q]);
                if (q < 2) breaks += !(M[a][p][q] <= M[a][p][q + 1]);
            }
    o.require(breaks == 0, "monotone on the 27-point grid");

    o.require(!g_witnesses.empty(), "criterion 6 witnesses available");
    long above = 0;
    for (long i : g_witness_self_intersections)
        above += !(LogScalar::from_exact(mpz_class(std::max(i, 1L))).log2() <= r.M.log2());
    o.require(above == 0, "log2 i(gamma, gamma) <= log2 M for every witness");
    o.detail << r.trace.size() << " trace steps, M = " << r.M.describe() << ", " << breaks
             << " monotonicity breaks, " << g_witnesses.size() << " witnesses below M";
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "exact constants", 1.0, exact_constants},  // the 1 ms limit is checked inside
        {2, "census exactness", 1.0, census_exactness},
        {3, "totient and Moebius identities", 30.0, summatory_identities},
        {4, "quadratic census lower bound", 10.0, rivin_lower_bound},
        {5, "cover isomorphism soundness", 60.0, cover_isomorphism},
        {6, "distinguishing witnesses", 15 * 14 / 2 * 60.0, distinguishing_witness},
        {7, "geometry cross-checks", 300.0, geometry},
        {8, "trace spectra", 300.0, trace_spectra},
        {9, "exact algebra", 30.0, exact_algebra},
        {10, "pipeline sanity", 1.0, pipeline_sanity},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "threw " << e.what();
        }
        const double elapsed = seconds_since(t0);
        if (elapsed > c.limit_s) {
            o.ok = false;
            o.detail << "; over the " << c.limit_s << " s limit";
        }
        failed += !o.ok;
        std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << o.detail.str() << " ("
                  << std::fixed << std::setprecision(2) << elapsed << " s)\n"
                  << std::defaultfloat << std::flush;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
