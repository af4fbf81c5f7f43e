#pragma once

#include <optional>
#include <string>

#include "surfcov/covers.hpp"

namespace surfcov {

enum class Verdict { Isomorphic, NonIsomorphicWithWitness, NonIsomorphicNoWitnessFound };

std::string to_string(Verdict v);

struct WitnessReport {
    Verdict verdict = Verdict::Isomorphic;
    std::optional<CurveClass> witness;
    std::optional<long> witness_self_intersection;  // on the base surface
    ElevationReport elevations_p, elevations_q;
    long budget_used = 0;  // candidates tested
    // Tested candidates with a simple elevation along p, along q.
    long simple_along_p = 0, simple_along_q = 0;
};

// Scans enumerate_classes(max_len), then c * s^k for generators s crossing c
// and k = 1..4, and returns the first class whose elevation simplicity differs.
WitnessReport find_witness(const HyperbolicModel& model, const PermCover& p, const PermCover& q, int max_len,
                           std::size_t cap = kDefaultEnumerationCap);

// Recomputes both elevation reports and confirms that exactly one cover has a simple elevation.
bool verify_witness(const HyperbolicModel& model, const PermCover& p, const PermCover& q, const CurveClass& c);

}  // namespace surfcov
