#include "surfcov/distinguisher.hpp"

#include <set>

namespace surfcov {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Isomorphic:
            return "Isomorphic";
        case Verdict::NonIsomorphicWithWitness:
            return "NonIsomorphicWithWitness";
        case Verdict::NonIsomorphicNoWitnessFound:
            return "NonIsomorphicNoWitnessFound";
    }
    return "?";
}

WitnessReport find_witness(const HyperbolicModel& model, const PermCover& p, const PermCover& q, int max_len,
                           std::size_t cap) {
    if (!(p.sig == q.sig)) throw DomainError("covers are over different surfaces");
    WitnessReport report;
    if (isomorphic_covers(p, q)) return report;

    const SurfaceSig& sig = p.sig;
    const std::vector<CurveClass> base = enumerate_classes(sig, max_len, cap);
    std::set<std::vector<Letter>> tested;

    auto test = [&](const CurveClass& c) {
        if (!tested.insert(c.word.letters).second) return false;
        ++report.budget_used;
        ElevationReport rp, rq;
        const bool sp = has_simple_elevation(model, p, c, &rp);
        const bool sq = has_simple_elevation(model, q, c, &rq);
        report.simple_along_p += sp;
        report.simple_along_q += sq;
        if (sp == sq) return false;
        report.verdict = Verdict::NonIsomorphicWithWitness;
        report.witness = c;
        report.witness_self_intersection = self_intersection(model, c);
        report.elevations_p = std::move(rp);
        report.elevations_q = std::move(rq);
        return true;
    };

    for (const CurveClass& c : base)
        if (test(c)) return report;

    // twist amplification along the (simple) generators that c crosses
    for (const CurveClass& c : base)
        for (int g = 0; g < sig.num_generators(); ++g) {
            const Word s{sig, {make_letter(g, false)}};
            const CurveClass sc = dehn_reduce(s);
            if (sc == c || primitive_root(c).root == sc || intersection(model, c, sc) == 0) continue;
            for (int k = 1; k <= 4; ++k) {
                const CurveClass t = dehn_reduce(concat(c.word, power(s, k)));
                if (!t.trivial() && test(t)) return report;
            }
        }
    report.verdict = Verdict::NonIsomorphicNoWitnessFound;
    return report;
}

bool verify_witness(const HyperbolicModel& model, const PermCover& p, const PermCover& q, const CurveClass& c) {
    if (c.trivial()) throw TrivialClass("a witness must be nontrivial");
    return has_simple_elevation(model, p, c) != has_simple_elevation(model, q, c);
}

}  // namespace surfcov
