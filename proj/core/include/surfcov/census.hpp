#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfcov/logscalar.hpp"

namespace surfcov {

// Lengths of the separating curve E and the seam eta on a four-holed sphere.
struct FourHoledMetricParams {
    mpq_class ell_E = 1;
    mpq_class ell_eta = 1;

    void validate() const;  // DomainError unless 0 < ell_eta <= ell_E
};

// The curve obtained from k parallel seams on each side of E glued with a p/2k twist.
struct CensusCurve {
    long p = 0;
    long k = 1;
    mpq_class length_upper;  // 2k ell_eta + |p| ell_E
};

long euler_phi(long n);
int mobius_mu(long n);

// Number of gamma_{p/2k} with |p/2k| < N: 4N - 1 for k = 1, else 2 phi(2k) N.
long census_count(long N, long k);

// Which twists p are admitted when enumerating directly.
enum class CensusFilter {
    // gcd(p, 2k) = 1 for k >= 2; every p for k = 1 (all half-integer twists)
    Stated,
    // gcd(p, 2k) = 1 for every k
    StrictGcd,
    // exactly the p for which the glued arcs form one closed curve
    Connected,
};

long census_enumerate(long N, long k, CensusFilter filter);
std::vector<CensusCurve> census_curves(long N, long k, const FourHoledMetricParams& params,
                                       CensusFilter filter = CensusFilter::StrictGcd);

// Components of the 1-manifold made from k nested arcs on each side of E,
// glued after rotating the 2k endpoints by p.
long arc_components(long p, long k);

// A(L) = sum_{k=1}^{L/(4 ell_E)} (L/(2k ell_E) - 1) 2 phi(2k). Strict mode requires
// L to be a multiple of 4 ell_E; otherwise the floored sum is returned.
mpq_class A_of_L(const mpq_class& L, const mpq_class& ell_E, bool strict = true);

// Number of census curves gamma_{p/2k} (StrictGcd) with length_upper <= L counted
// through the floor bookkeeping: |p/2k| < floor(L/(2k ell_E) - 1) for k <= L/(4 ell_E).
long census_length_count(const mpq_class& L, const FourHoledMetricParams& params);

// Rational enclosure of pi, 50 decimal digits.
const mpq_class& pi_lower();
const mpq_class& pi_upper();

// Three-valued result of a certified comparison.
enum class Certified { True, False, Undecided };
std::string to_string(Certified c);

struct BoundCheck {
    std::string name;
    double lhs = 0, rhs = 0;  // floating renderings for reports
    Certified holds = Certified::Undecided;
};

struct SummatoryReport {
    long x = 0;
    long Phi_direct = 0, Phi_inversion = 0;
    mpq_class Psi_direct, Psi_inversion;
    bool agree = false;
    std::vector<BoundCheck> bounds;  // A-, Psi, A+, A
};

SummatoryReport summatory_checks(long x);

// Agreement of the direct and inversion forms of Phi and Psi for every x <= x_max.
// Phi is compared exactly at every x. Psi is compared exactly through its increments
// (both forms change by the same rational at each step), modulo two primes at every x,
// and as full rationals at every x <= exact_through and at x_max.
struct SummatorySweep {
    long x_max = 0;
    long exact_through = 0;
    long Phi_mismatches = 0;
    long Psi_increment_mismatches = 0;
    long Psi_modular_mismatches = 0;
    long Psi_exact_mismatches = 0;
    bool ok() const {
        return Phi_mismatches == 0 && Psi_increment_mismatches == 0 && Psi_modular_mismatches == 0 &&
               Psi_exact_mismatches == 0;
    }
};

SummatorySweep summatory_sweep(long x_max, long exact_through = 2000);

// The four stated lower/upper bounds for every integer x in [x_lo, x_hi].
struct BoundSweep {
    long x_lo = 0, x_hi = 0;
    // failures per bound, in the order A-, Psi, A+, A; first failing x or 0
    std::vector<long> failures = std::vector<long>(4, 0);
    std::vector<long> first_failure = std::vector<long>(4, 0);
    long undecided = 0;
    bool all_hold() const;
};

BoundSweep bounds_sweep(long x_lo, long x_hi);

struct C1ScanReport {
    mpq_class ell_E;
    long x_max = 0;
    long x_star = 0;              // least x with the bound holding on [x_star, x_max]
    bool x_star_within_30 = false;
    long undecided = 0;
    mpq_class A_at_30;            // A(120 ell_E)
    double c1L2_at_30 = 0;        // 3 (120)^2 / (8 pi^2)
    bool holds_at_30 = false;
    // -2x ln x - 12x - 4 >= -(6/pi^2) x^2 at x = 30
    BoundCheck intermediate_at_30;
};

C1ScanReport c1_threshold_scan(const mpq_class& ell_E, long x_max);

// c2 upper bound (1/tau + 1/B)^e for a surface of type (g, b, c).
enum class C2Exponent {
    Theorem,   // e = 6g - 6 + 2b + 2c
    Appendix,  // e = 6g - 6 + b + 2c
};

long c2_exponent(int g, int b, int c, C2Exponent convention);

// Full width 2 arsinh(csch(B/2)) of the collar around a curve of length B.
double default_tau(double B);

struct C2Params {
    int g = 2, b = 0, c = 0;
    double B = 1.0;  // total length of the pants decomposition
    C2Exponent convention = C2Exponent::Theorem;
    std::optional<double> tau;  // defaults to default_tau(B)
};

LogScalar c2_dehn_thurston_bound(const C2Params& params);

}  // namespace surfcov
