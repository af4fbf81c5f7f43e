#include "surfcov/constants.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "surfcov/errors.hpp"

namespace surfcov {

namespace {

constexpr double kLog2e = std::numbers::log2e;
constexpr double kLn2 = std::numbers::ln2;
// Past this argument arsinh(csch(x)) equals 2 e^{-x} to double precision.
constexpr double kAsymptotic = 30.0;

LogScalar ls(double v) { return LogScalar::from_double(v); }
LogScalar ls(const mpz_class& z) { return LogScalar::from_exact(z); }
LogScalar ls_int(long v) { return LogScalar::from_exact(mpz_class(v)); }

// e^y for a LogScalar exponent.
LogScalar exp_e(const LogScalar& y) { return (y * ls(kLog2e)).exp2(); }

mpz_class factorial(long n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    if (n > 100000) throw BudgetTooLarge("factorial argument above 1e5");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace

double collar_intersection_bound(double length, int deg) {
    if (deg < 1) throw DomainError("collar bound needs deg >= 1");
    if (!(length > 0) || !std::isfinite(length)) throw DomainError("collar bound needs a positive length");
    const LogScalar v = collar_intersection_bound(ls(length), ls_int(deg));
    if (!v.finite_double()) throw DomainError("collar bound beyond the double range; use the LogScalar form");
    return v.to_double();
}

LogScalar collar_intersection_bound(const LogScalar& length, const LogScalar& deg) {
    if (!(ls(0.0) < length)) throw DomainError("collar bound needs a positive length");
    if (deg < ls(1.0)) throw DomainError("collar bound needs deg >= 1");
    const LogScalar y = deg * length / ls(2.0);
    if (y < ls(kAsymptotic)) {
        const double yd = y.to_double();
        return deg * ls(2.0 * yd / (4.0 * std::asinh(1.0 / std::sinh(yd))));
    }
    // deg^2 L / (4 * 2 e^{-y})
    return deg * deg * length * exp_e(y) / ls(8.0);
}

LogScalar collar_crossing_bound(const LogScalar& length_beta, const LogScalar& length_alpha) {
    if (!(ls(0.0) < length_alpha) || length_beta < ls(0.0)) throw DomainError("collar crossing needs positive lengths");
    const LogScalar half = length_alpha / ls(2.0);
    if (half < ls(kAsymptotic)) {
        const double w = 2.0 * std::asinh(1.0 / std::sinh(half.to_double()));
        return length_beta / ls(w);
    }
    // w = 4 e^{-l/2}
    return length_beta * exp_e(half) / ls(4.0);
}

double cc_distance_bound(const mpz_class& i, DistanceMode mode, int g, int pn) {
    if (i < 1) throw DomainError("intersection number must be at least 1");
    if (mode == DistanceMode::Hempel) return 2.0 * log2_exact(i) + 2.0;
    const mpq_class base(2 * g + pn - 4, 2);
    if (base <= 1) throw DegenerateComplexity(fmt::format("log base (2g + pn - 4)/2 = {} is at most 1", base.get_d()));
    const mpz_class twice = 2 * i + 1;
    return 6.0 + 2.0 * (log2_exact(twice) * kLn2) / (log2_exact(base) * kLn2);
}

LogScalar at_intersection_bound(long j, long k, long chi_abs, long C) {
    if (j < 0 || k < 0) throw DomainError("indices must be nonnegative");
    if (chi_abs < 1 || C < 0) throw DomainError("need |chi| >= 1 and C >= 0");
    const long m = std::max(j, k);
    if (m < 3) throw DomainError("main term needs max(j, k) >= 3");
    const long e1 = 2 * m - 5, e2 = std::labs(j - k) + 2;
    mpq_class b2(3 * chi_abs, 2);
    b2.canonicalize();
    const double bits = e1 * std::log2(static_cast<double>(C + 3)) + e2 * log2_exact(b2);
    if (bits < 4096) {
        mpz_class p1;
        mpz_ui_pow_ui(p1.get_mpz_t(), static_cast<unsigned long>(C + 3), static_cast<unsigned long>(e1));
        mpq_class v(p1);
        for (long t = 0; t < e2; ++t) v *= b2;
        return LogScalar::from_exact(v);
    }
    return LogScalar::from_log2(bits);
}

LogScalar apt_qi_constants(long chi_abs, const LogScalar& deg) {
    if (chi_abs < 2) throw DomainError("APT constant needs |chi| >= 2");
    if (deg < ls(1.0)) throw DomainError("APT constant needs deg >= 1");
    const double l = std::log2(80.0) + 54.0 * kLog2e + std::log2(std::numbers::pi) +
                     13.0 * std::log2(static_cast<double>(chi_abs));
    return LogScalar::from_log2(l) * deg;
}

LogScalar apt_qi_constants(long chi_abs, long deg) {
    if (deg < 1) throw DomainError("APT constant needs deg >= 1");
    return apt_qi_constants(chi_abs, ls_int(deg));
}

BowditchChain bowditch_chain(long D_bow) {
    if (D_bow < 1) throw DomainError("D must be positive");
    BowditchChain c;
    c.D_bow = D_bow;
    c.K_bow = 18 * D_bow + 2;
    c.delta = 17;
    c.geodesic_gap = 92 * c.delta;
    const mpz_class K(c.K_bow);
    c.lambda_to_geodesic = 92 * K * K * (2 * K + 19);
    return c;
}

mpq_class W0_lower(const mpz_class& g, long pn) {
    const mpz_class a = 2 * g + pn - 1, b = 2 * g + pn + 6;
    if (g < 0 || pn < 0 || a <= 0) throw DomainError("W0 needs 2g + pn >= 2");
    mpq_class w(mpz_class(1), 8 * a * b);
    w.canonicalize();
    return w;
}

TangBound tang_circumcenter_bound(const mpz_class& g, long pn, const mpz_class& order_G) {
    if (order_G < 1) throw DomainError("|G| must be at least 1");
    TangBound t;
    t.chain = bowditch_chain(20);
    t.W0 = W0_lower(g, pn);
    const mpz_class w_inv = t.W0.get_den();  // 8 (2g+p-1)(2g+p+6)
    const mpz_class poly = 2 * w_inv * w_inv * w_inv * order_G + 2 + t.chain.lambda_to_geodesic + 12;
    t.polynomial_part = LogScalar::from_exact(poly);
    // 2 (8 sqrt2 X)^2 |G| + 1 = 2i + 1 with i = 128 X^2 |G|
    const mpz_class X = w_inv / 8;
    t.short_intersection = 128 * X * X * order_G;
    const mpq_class base(2 * g + pn - 4, 2);
    if (base <= 1) {
        t.hempel_fallback = true;
        t.log_term = ls(4.0 * log2_exact(t.short_intersection) + 4.0);
    } else {
        const mpz_class twice = 2 * t.short_intersection + 1;
        t.log_term = ls(4.0 * log2_exact(twice) / log2_exact(base));
    }
    t.total = t.polynomial_part + t.log_term;
    return t;
}

RivinValues FourHoledSphereProvider::constants(const SurfaceType& s) const {
    if (!(s.genus == 0 && s.boundary == 4 && s.punctures == 0))
        throw ProviderMissing("the four-holed-sphere provider only covers (g, b, c) = (0, 4, 0)");
    if (!(ell_E_ > 0)) throw DomainError("ell_E must be positive");
    RivinValues v;
    v.c1 = ls(3.0 / (8.0 * std::numbers::pi * std::numbers::pi * ell_E_ * ell_E_));
    v.L0 = ls(120.0 * ell_E_);
    C2Params p;
    p.g = 0;
    p.b = 4;
    p.B = ell_E_;
    v.c2 = c2_dehn_thurston_bound(p);
    v.source = fmt::format("four-holed sphere, l(E) = {}", ell_E_);
    return v;
}

double PlaceholderProvider::pants_length(long genus) const {
    if (opt_.B > 0) return opt_.B;
    return static_cast<double>(3 * genus - 3) * 26.0 * static_cast<double>(genus - 1);
}

RivinValues PlaceholderProvider::constants(const SurfaceType& s) const {
    if (s.boundary != 0 || s.punctures != 0 || s.genus < 2)
        throw ProviderMissing("the placeholder provider only covers closed surfaces of genus >= 2");
    if (s.genus > 1'000'000'000) throw BudgetTooLarge("genus above 1e9");
    RivinValues v;
    C2Params p;
    p.g = static_cast<int>(s.genus);
    p.B = pants_length(s.genus);
    p.convention = opt_.convention;
    v.c2 = c2_dehn_thurston_bound(p);
    v.c1 = ls(opt_.c1 > 0 ? opt_.c1 : 3.0 / (8.0 * std::numbers::pi * std::numbers::pi));
    v.L0 = ls(opt_.L0);
    v.source = fmt::format("placeholder: c2 from Dehn-Thurston with B = {}; c1, L0 supplied", p.B);
    return v;
}

namespace {

class Builder {
public:
    explicit Builder(ConstantsReport& r) : r_(r) {}

    LogScalar step(std::string name, std::string claim, std::string formula, LogScalar value, std::string note = {}) {
        r_.trace.push_back({std::move(name), std::move(claim), std::move(formula), value, std::move(note)});
        return value;
    }

private:
    ConstantsReport& r_;
};

SurfaceType closed(long chi_abs, long degree) { return {degree * chi_abs / 2 + 1, 0, 0}; }

}  // namespace

ConstantsReport pipeline_M(long chi_abs, long deg_p, long deg_q, const PipelineConfig& config) {
    if (chi_abs < 2 || chi_abs % 2) throw DomainError("|chi| must be an even integer >= 2");
    if (deg_p < 1 || deg_q < 1) throw DomainError("degrees must be at least 1");
    if (config.C < 1 || config.C > 1000) throw DomainError("C must lie in [1, 1000]");
    if (!config.provider) throw ProviderMissing("no Rivin constants provider configured");
    const long d = std::max(deg_p, deg_q), dmin = std::min(deg_p, deg_q);
    if (d > 30) throw BudgetTooLarge("degrees above 30");

    ConstantsReport R;
    Builder b(R);
    R.chi_abs = chi_abs;
    R.deg_p = deg_p;
    R.deg_q = deg_q;
    R.d = d;
    R.C_bgi = config.C;
    R.E = config.C + 41;
    R.pi_variant = config.pi_variant;
    R.covers_necessarily_isomorphic = d == 1;

    const char* core = "common core of the two covers";
    const mpz_class d2f_exact = factorial(d * d);
    R.core_index_bound = b.step("core_index_bound", core, "(deg p * deg q)!", ls(factorial(deg_p * deg_q)));
    const LogScalar d2f = R.d2_factorial = b.step("d2_factorial", core, "(d^2)! bounds |G| and deg(Z -> S)", ls(d2f_exact),
                                                  R.covers_necessarily_isomorphic ? "d = 1: both covers are the identity, so they are isomorphic; M is defined but unused" : "");

    // curve-graph constants
    const char* hyp = "uniform hyperbolicity of curve graphs";
    R.bowditch = bowditch_chain(20);
    b.step("K_bow", hyp, "18 D + 2, D = 20", ls_int(R.bowditch.K_bow));
    b.step("geodesic_gap", hyp, "92 * 17", ls_int(R.bowditch.geodesic_gap));
    b.step("lambda_to_geodesic", hyp, "92 K^2 (2K + 19)", ls(R.bowditch.lambda_to_geodesic));

    const char* tang = "circumcenter of an orbit is near the projection to an intermediate cover";
    const mpz_class gZ = d2f_exact * chi_abs / 2 + 1;
    R.tang = tang_circumcenter_bound(gZ, 0, d2f_exact);
    b.step("W0_lower", tang, "1 / (8 (2g + p - 1)(2g + p + 6)) on Z", LogScalar::from_exact(R.tang.W0));
    R.D_tang = b.step("D_tang", tang, "2 W0^-3 |G| + 2 + lambda + 12 + log term, genus of Z = (d^2)! |chi| / 2 + 1",
                      R.tang.total,
                      R.tang.hempel_fallback ? "log base (2g - 4)/2 <= 1: Hempel form 4 log2 i + 4 used for the short-set diameter" : "");

    // Rivin constants
    const char* rivin = "growth of simple closed geodesics";
    const RivinProvider& prov = *config.provider;
    R.rivin.provider = prov.name();
    {
        FourHoledSphereProvider four(1.0);
        const RivinValues v = four.constants({0, 4, 0});
        R.rivin.ell_E = 1.0;
        R.rivin.c1_04 = v.c1.to_double();
        R.rivin.L0_04 = v.L0.to_double();
        R.rivin.c2_04 = v.c2.to_double();
    }
    R.rivin.S = prov.constants(closed(chi_abs, 1));
    R.rivin.X = prov.constants(closed(chi_abs, dmin));
    R.rivin.Y = prov.constants(closed(chi_abs, d));
    R.rivin.X_top = R.rivin.Y;
    for (long deg = 1; deg <= std::max(1L, d - 1); ++deg) {
        const RivinValues v = prov.constants(closed(chi_abs, deg));
        if (deg == 1 || R.rivin.W_max.c2 < v.c2) R.rivin.W_max.c2 = v.c2;
        if (deg == 1 || R.rivin.W_max.L0 < v.L0) R.rivin.W_max.L0 = v.L0;
        R.rivin.W_max.c1 = v.c1;
        R.rivin.W_max.source = v.source;
    }
    b.step("c1_Y", rivin, "provider c1 on the cover of degree d", R.rivin.Y.c1, R.rivin.Y.source);
    b.step("c2_X", rivin, "provider c2 on the cover of the smaller degree", R.rivin.X.c2, R.rivin.X.source);
    b.step("c2_W_max", rivin, "max provider c2 over covers of degree < d", R.rivin.W_max.c2, R.rivin.W_max.source);

    const LogScalar growth = ls_int(d).pow(ls_int(1 + 3 * d * chi_abs));
    b.step("d_power", rivin, "d^(1 + 3 d |chi|)", growth);

    // unequal degrees
    const char* larger = "a cover of larger degree has a short simple curve with no simple elevation";
    LogScalar L1 = max(max(R.rivin.S.L0, R.rivin.X.L0), R.rivin.Y.L0);
    L1 = max(L1, ls(1.0) + R.rivin.X.c2 * growth / R.rivin.Y.c1);
    R.L1 = b.step("L1", larger, "max(L0(S), L0(X), L0(Y), 1 + c2(X) d^(1+3d|chi|) / c1(Y))", L1);
    R.M1 = b.step("M1", larger, "(d^2!)^2 L1 / (4 arsinh(csch(d^2! L1 / 2)))", collar_intersection_bound(R.L1, d2f));

    // equal degrees: the curves alpha and eta
    const char* bounded = "bounded intersection of elevated curves";
    LogScalar L2 = max(R.rivin.W_max.L0, R.rivin.X_top.L0);
    L2 = max(L2, ls(1.0) + d2f * R.rivin.W_max.c2 * growth / R.rivin.X_top.c1);
    R.L2 = b.step("L2", bounded, "max(L0(W), L0(X), 1 + d^2! max c2(W) d^(1+3d|chi|) / c1(X))", L2);
    const LogScalar len_alpha = b.step("len_alpha_tilde", bounded, "d^2! L2", d2f * R.L2);
    const double bers = 4.0 * std::log(4.0 * std::numbers::pi * static_cast<double>(chi_abs));
    b.step("bers_length", bounded, "4 log(4 pi |chi|)", ls(bers));
    b.step("len_eta_tilde", bounded, "d^2! * 4 log(4 pi |chi|)", d2f * ls(bers));
    const double bers_k1 = config.pi_variant ? bers : 4.0 * std::log(4.0 * static_cast<double>(chi_abs));
    R.K1 = b.step("K1", bounded,
                  config.pi_variant ? "d^2! 4 log(4 pi |chi|) / (2 arsinh(csch(d^2! L2 / 2)))"
                                    : "d^2! 4 log(4 |chi|) / (2 arsinh(csch(d^2! L2 / 2)))",
                  collar_crossing_bound(d2f * ls(bers_k1), len_alpha),
                  config.pi_variant ? "Bers length with pi, as derived for eta" : "Bers length without pi");

    // moving away from the intermediate covers
    const char* away = "twisting along alpha moves away from every intermediate cover";
    b.step("E", away, "C + 41", ls_int(R.E));
    const LogScalar hempel = b.step("hempel_offset", away, "2 log2 K1 + 2",
                                    ls(2.0) * max(R.K1, ls(1.0)).log2() + ls(2.0));
    const LogScalar apt = b.step("apt_constant", away, "80 e^54 pi d^2! |chi|^13", apt_qi_constants(chi_abs, d2f));
    R.K2 = b.step("K2", away, "APT constant + Hempel offset + 1", apt + hempel + ls(1.0),
                  "assembled so that n/K2 - K2 is below (n - offset)/APT - 1; not a formula from the argument");

    // orbit diameter
    const char* orbit = "an orbit point in the image of Y forces n to be small";
    const LogScalar q = R.K2 * (d2f + R.K2 + R.D_tang);
    b.step("n_bound", orbit, "K2 (d^2! + K2 + D)", q);
    const LogScalar lq = q.log2();
    if (lq.finite_double()) {
        const double l = lq.to_double();
        R.K3 = ls_int(static_cast<long>(std::floor(l + 1e-9 * std::max(1.0, l))) + 1);
    } else {
        R.K3 = lq;
    }
    b.step("K3", orbit, "least integer with K2 (d^2! + K2 + D) + 1 < 2^K3 + 2, up to rounding", R.K3);
    R.N_threshold = b.step("N_threshold", orbit, "2^K3 + 2", R.K3.exp2() + ls(2.0));

    // final length bound
    const char* final_len = "length and self-intersection of the final curve";
    const LogScalar base = ls_int(config.C + 3);
    const LogScalar chi_term = LogScalar::from_exact(mpq_class(3 * chi_abs, 2));
    LogScalar e1, e2;
    if (R.K3.exact() && *R.K3.exact() < 60) {
        const long K = R.K3.exact()->get_num().get_si();
        e1 = ls_int((1L << (K + 1)) - 2);
        e2 = ls_int((1L << K) + 4 * K - 1);
    } else {
        e1 = (R.K3 + ls(1.0)).exp2();
        e2 = R.K3.exp2() + ls(4.0) * R.K3;
    }
    const LogScalar lead = b.step("length_v_N", final_len,
                                  fmt::format("{}^(2^(K+1) - 2) (3|chi|/2)^(2^K + 4K - 1), K = K3", config.C + 3),
                                  base.pow(e1) * chi_term.pow(e2),
                                  "leading term only; the lower-order terms and l_S(v_3) are not included");
    const LogScalar len_N = b.step("length_v_N_on_Z", final_len, "|G| l_S(v_N)", d2f * lead);
    const LogScalar i_twist = b.step("i_v_N_alpha", final_len, "l_Z(v_N) / (2 arsinh(csch(l(alpha)/2)))",
                                     collar_crossing_bound(len_N, len_alpha));
    const LogScalar len_gamma = b.step("length_gamma", final_len, "E i(v_N, alpha) l(alpha) + l_Z(v_N)",
                                       ls_int(R.E) * i_twist * len_alpha + len_N);
    R.M2 = b.step("M2", final_len, "l / (4 arsinh(csch(l / 2))) with l = length_gamma",
                  collar_intersection_bound(len_gamma, ls(1.0)));
    R.M = b.step("M", "the theorem's bound", "max(M1, M2)", max(R.M1, R.M2));
    return R;
}

bool replay_matches(const ConstantsReport& report, const PipelineConfig& config) {
    const ConstantsReport again = pipeline_M(report.chi_abs, report.deg_p, report.deg_q, config);
    if (again.trace.size() != report.trace.size()) return false;
    for (std::size_t i = 0; i < again.trace.size(); ++i) {
        const TraceStep &a = again.trace[i], &r = report.trace[i];
        if (a.name != r.name || a.claim != r.claim || a.formula != r.formula || a.note != r.note) return false;
        if (!(a.value == r.value)) return false;
    }
    return true;
}

}  // namespace surfcov
