#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "surfcov/census.hpp"
#include "surfcov/logscalar.hpp"

namespace surfcov {

// Self-intersection bound deg^2 L / (4 arsinh(csch(deg L / 2))) for a closed
// geodesic of length L seen through a cover of degree deg.
double collar_intersection_bound(double length, int deg);
LogScalar collar_intersection_bound(const LogScalar& length, const LogScalar& deg);

// Intersection bound L(beta) / w(alpha) from the collar of width w around alpha.
LogScalar collar_crossing_bound(const LogScalar& length_beta, const LogScalar& length_alpha);

enum class DistanceMode { Hempel, Bowditch };

// Curve-graph distance bound from an intersection number i >= 1:
// Hempel 2 log2(i) + 2; Bowditch 6 + 2 log(2i + 1) / log((2g + pn - 4) / 2).
double cc_distance_bound(const mpz_class& i, DistanceMode mode, int g = 0, int pn = 0);

// Main term (C+3)^(2 max(j,k) - 5) (3|chi|/2)^(|j-k| + 2) of the intersection
// bound along the quasi-geodesic sequence; the lower-order term is not included.
LogScalar at_intersection_bound(long j, long k, long chi_abs, long C);

// 80 e^54 pi deg |chi|^13, the multiplicative constant of the curve-graph embedding.
LogScalar apt_qi_constants(long chi_abs, const LogScalar& deg);
LogScalar apt_qi_constants(long chi_abs, long deg);

struct BowditchChain {
    long D_bow = 20;
    long K_bow = 0;               // 18 D + 2
    long delta = 17;
    long geodesic_gap = 0;        // 92 delta
    mpz_class lambda_to_geodesic; // 92 K^2 (2K + 19)
};

BowditchChain bowditch_chain(long D_bow = 20);

// 1 / (8 (2g + pn - 1)(2g + pn + 6))
mpq_class W0_lower(const mpz_class& g, long pn);

struct TangBound {
    BowditchChain chain;
    mpq_class W0;
    mpz_class short_intersection;   // 128 ((2g+p-1)(2g+p+6))^2 |G|
    LogScalar polynomial_part;      // 2 W0^-3 |G| + 2 + lambda + 12
    LogScalar log_term;
    bool hempel_fallback = false;
    LogScalar total;
};

// Circumcenter distance bound for a |G|-orbit on a surface of genus g with pn
// punctures. When (2g + pn - 4)/2 <= 1 the log term uses Hempel's bound instead:
// 4 log2(i) + 4 in place of 4 log(2i + 1) / log((2g + pn - 4) / 2).
TangBound tang_circumcenter_bound(const mpz_class& g, long pn, const mpz_class& order_G);

// Surface of type (g, b, c): genus, boundary components, punctures.
struct SurfaceType {
    long genus = 2;
    int boundary = 0;
    int punctures = 0;
};

struct RivinValues {
    LogScalar c1, c2, L0;
    std::string source;
};

class RivinProvider {
public:
    virtual ~RivinProvider() = default;
    virtual std::string name() const = 0;
    // Throws ProviderMissing for surfaces the provider cannot handle.
    virtual RivinValues constants(const SurfaceType& s) const = 0;
};

// Exact constants on the four-holed sphere: c1 = 3/(8 pi^2 l^2), L0 = 120 l,
// c2 from the Dehn-Thurston bound with B = l. Other surfaces are refused.
class FourHoledSphereProvider : public RivinProvider {
public:
    explicit FourHoledSphereProvider(double ell_E = 1.0) : ell_E_(ell_E) {}
    std::string name() const override { return "four-holed-sphere"; }
    RivinValues constants(const SurfaceType& s) const override;

private:
    double ell_E_;
};

// Stand-in for closed surfaces. c2 is the Dehn-Thurston bound with pants length
// B = (3g - 3) * 26(g - 1) unless overridden; c1 and L0 are supplied values
// (by default the four-holed-sphere constants at l(E) = 1) and are reported as such.
class PlaceholderProvider : public RivinProvider {
public:
    struct Options {
        double c1 = 0;  // 0 selects 3/(8 pi^2)
        double L0 = 120;
        double B = 0;   // 0 selects the default pants length
        C2Exponent convention = C2Exponent::Theorem;
    };
    PlaceholderProvider() = default;
    explicit PlaceholderProvider(Options o) : opt_(o) {}
    std::string name() const override { return "placeholder"; }
    RivinValues constants(const SurfaceType& s) const override;
    double pants_length(long genus) const;

private:
    Options opt_;
};

struct RivinConstants {
    double ell_E = 1.0;
    double c1_04 = 0;
    double L0_04 = 0;
    double c2_04 = 0;
    std::string provider;
    // values used by the pipeline, by surface
    RivinValues S, X, Y, W_max, X_top;
};

struct TraceStep {
    std::string name;
    std::string claim;    // the step of the argument this instantiates
    std::string formula;
    LogScalar value;
    std::string note;     // omissions and conventions
};

struct PipelineConfig {
    long C = 938;
    bool pi_variant = true;
    std::shared_ptr<const RivinProvider> provider = std::make_shared<PlaceholderProvider>();
};

struct ConstantsReport {
    long chi_abs = 0, deg_p = 0, deg_q = 0, d = 0;
    bool covers_necessarily_isomorphic = false;
    LogScalar core_index_bound;  // (deg p deg q)!
    LogScalar d2_factorial;      // (d^2)!
    long C_bgi = 938;
    long E = 979;
    bool pi_variant = true;
    LogScalar D_tang, K1, K2, K3, N_threshold, L1, L2, M1, M2, M;
    RivinConstants rivin;
    BowditchChain bowditch;
    TangBound tang;
    std::vector<TraceStep> trace;
};

ConstantsReport pipeline_M(long chi_abs, long deg_p, long deg_q, const PipelineConfig& config = {});

// Recomputes the report from its inputs and compares every trace value.
bool replay_matches(const ConstantsReport& report, const PipelineConfig& config = {});

}  // namespace surfcov
