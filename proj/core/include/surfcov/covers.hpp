#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfcov/hyperbolic.hpp"
#include "surfcov/words.hpp"

namespace surfcov {

// A finite cover given by the right action of the generators on sheets.
// Sheets are 0-indexed here; files and JSON use 1-indexed sheets.
struct PermCover {
    SurfaceSig sig;
    int degree = 1;
    std::vector<std::vector<int>> gen_perms;  // generator order a1, b1, a2, b2, ...

    int act(int sheet, const Word& w) const;
    std::vector<int> word_perm(const Word& w) const;
    SubgroupFilter filter(int base_sheet = 0) const { return {gen_perms, base_sheet}; }
};

// Unvalidated input: one 1-indexed image list per generator, in generator order.
struct RawCover {
    int genus = 2;
    int degree = 1;
    std::vector<std::vector<int>> perms;
};

PermCover validate_cover(const RawCover& raw);
PermCover parse_cover_json(std::string_view text);
PermCover load_cover_file(const std::string& path);
std::string cover_to_json(const PermCover& cover);

PermCover trivial_cover(const SurfaceSig& sig);
// Same cover with sheet i renamed sigma[i].
PermCover relabel(const PermCover& cover, const std::vector<int>& sigma);
// Every transitive cover of the given degree, as labelled permutation tuples.
std::vector<PermCover> enumerate_covers(const SurfaceSig& sig, int degree);

std::vector<int> elevation_degrees(const PermCover& cover, const CurveClass& c);

struct ElevationEntry {
    int cycle_length = 1;
    int base_sheet = 0;
    bool simple = false;
    long self_intersection = 0;
};

struct ElevationReport {
    std::vector<ElevationEntry> entries;  // one per cycle, ordered by base sheet

    bool any_simple() const;
};

ElevationReport elevation_report(const HyperbolicModel& model, const PermCover& cover, const CurveClass& c);
bool has_simple_elevation(const HyperbolicModel& model, const PermCover& cover, const CurveClass& c,
                          ElevationReport* report = nullptr);

// G is the group induced on the orbit of the paired base point (0, 0) in the
// product action; elements are permutations of that orbit, element 0 the identity.
struct GaloisDiamond {
    std::vector<std::pair<int, int>> orbit;
    std::vector<std::vector<int>> elements;
    std::vector<int> A, B;                 // sorted element indices
    std::vector<int> transversal;          // representatives of the cosets gA
    std::vector<std::vector<int>> H;       // H[i] = <t A t^-1, B> for t = transversal[i]

    std::size_t order() const { return elements.size(); }
    std::size_t index_of_A() const { return elements.size() / A.size(); }
    std::size_t index_of_B() const { return elements.size() / B.size(); }
    // B = H_g for some g.
    bool join_criterion() const;
};

GaloisDiamond galois_diamond(const PermCover& p, const PermCover& q);

// Conjugacy of the two permutation actions, by propagating a sheet matching.
bool action_equivalent(const PermCover& p, const PermCover& q);

// Decided by the diamond (equal degrees and B = H_g) and by action
// equivalence; disagreement throws InternalDisagreement.
bool isomorphic_covers(const PermCover& p, const PermCover& q);

// Normal subgroup: the action commutes with a transitive group of relabelings.
bool is_regular(const PermCover& cover);

}  // namespace surfcov
