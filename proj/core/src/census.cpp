#include "surfcov/census.hpp"

#include <mpfr.h>

#include <cmath>
#include <numeric>

#include "surfcov/errors.hpp"

namespace surfcov {

void FourHoledMetricParams::validate() const {
    if (ell_E <= 0 || ell_eta <= 0) throw DomainError("metric lengths must be positive");
    if (ell_eta > ell_E) throw DomainError("the seam must be no longer than E");
}

long euler_phi(long n) {
    if (n <= 0) throw DomainError("euler_phi needs n >= 1");
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

int mobius_mu(long n) {
    if (n <= 0) throw DomainError("mobius_mu needs n >= 1");
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

long census_count(long N, long k) {
    if (N < 1 || k < 1) throw DomainError("census_count needs N, k >= 1");
    return k == 1 ? 4 * N - 1 : 2 * euler_phi(2 * k) * N;
}

long arc_components(long p, long k) {
    if (k < 1) throw DomainError("arc_components needs k >= 1");
    const long n = 2 * k;
    const long shift = ((p % n) + n) % n;
    auto side1 = [&](long i) { return n - 1 - i; };
    auto side2 = [&](long i) { return ((n - 1 + 2 * shift - i) % n + n) % n; };
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    long components = 0;
    for (long start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++components;
        long i = start;
        do {
            seen[static_cast<std::size_t>(i)] = 1;
            const long j = side1(i);
            seen[static_cast<std::size_t>(j)] = 1;
            i = side2(j);
        } while (i != start);
    }
    return components;
}

namespace {

bool admitted(long p, long k, CensusFilter filter) {
    switch (filter) {
        case CensusFilter::Stated:
            return k == 1 || std::gcd(p, 2 * k) == 1;
        case CensusFilter::StrictGcd:
            return std::gcd(p, 2 * k) == 1;
        case CensusFilter::Connected:
            return arc_components(p, k) == 1;
    }
    return false;
}

mpq_class frac(long a, long b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

long census_enumerate(long N, long k, CensusFilter filter) {
    if (N < 1 || k < 1) throw DomainError("census_enumerate needs N, k >= 1");
    long count = 0;
    // |p / 2k| < N  <=>  |p| < 2kN
    for (long p = -2 * k * N + 1; p < 2 * k * N; ++p) count += admitted(p, k, filter);
    return count;
}

std::vector<CensusCurve> census_curves(long N, long k, const FourHoledMetricParams& params, CensusFilter filter) {
    params.validate();
    if (N < 0 || k < 1) throw DomainError("census_curves needs N >= 0, k >= 1");
    std::vector<CensusCurve> out;
    for (long p = -2 * k * N + 1; p < 2 * k * N; ++p) {
        if (!admitted(p, k, filter)) continue;
        out.push_back({p, k, 2 * k * params.ell_eta + std::labs(p) * params.ell_E});
    }
    return out;
}

mpq_class A_of_L(const mpq_class& L, const mpq_class& ell_E, bool strict) {
    if (L <= 0 || ell_E <= 0) throw DomainError("A_of_L needs positive L and ell_E");
    const mpq_class r = L / ell_E;
    if (strict && (r.get_den() != 1 || r.get_num() % 4 != 0))
        throw NotAMultiple("L must be a multiple of 4 ell_E");
    const mpz_class kmax = floor_q(r / 4);
    if (kmax > 10'000'000) throw BudgetTooLarge("A_of_L summation range above 1e7");
    mpq_class sum = 0;
    for (long k = 1; k <= kmax.get_si(); ++k) {
        mpq_class term = r / (2 * k) - 1;
        if (!strict) term = floor_q(term);
        sum += term * (2 * euler_phi(2 * k));
    }
    sum.canonicalize();
    return sum;
}

long census_length_count(const mpq_class& L, const FourHoledMetricParams& params) {
    params.validate();
    if (L <= 0) throw DomainError("census_length_count needs L > 0");
    const mpq_class r = L / params.ell_E;
    const long kmax = floor_q(r / 4).get_si();
    long count = 0;
    for (long k = 1; k <= kmax; ++k) {
        const long N = floor_q(r / (2 * k) - 1).get_si();
        if (N < 1) continue;
        for (const CensusCurve& c : census_curves(N, k, params, CensusFilter::StrictGcd)) {
            if (c.length_upper > L) throw InternalDisagreement("census curve longer than L");
            ++count;
        }
    }
    return count;
}

const mpq_class& pi_lower() {
    static const mpq_class v("314159265358979323846264338327950288419716939937510/"
                             "100000000000000000000000000000000000000000000000000");
    return v;
}

const mpq_class& pi_upper() {
    static const mpq_class v = pi_lower() + mpq_class(1, mpz_class("100000000000000000000000000000000000000000000000000"));
    return v;
}

std::string to_string(Certified c) {
    switch (c) {
        case Certified::True:
            return "true";
        case Certified::False:
            return "false";
        case Certified::Undecided:
            return "undecided";
    }
    return "?";
}

namespace {

// Rational enclosure [lo, hi] of ln x.
struct LnEnclosure {
    mpq_class lo, hi;
};

LnEnclosure ln_enclosure(long x) {
    mpfr_t v;
    mpfr_init2(v, 256);
    LnEnclosure e;
    mpfr_set_si(v, x, MPFR_RNDN);
    mpfr_log(v, v, MPFR_RNDD);
    mpfr_get_q(e.lo.get_mpq_t(), v);
    mpfr_set_si(v, x, MPFR_RNDN);
    mpfr_log(v, v, MPFR_RNDU);
    mpfr_get_q(e.hi.get_mpq_t(), v);
    mpfr_clear(v);
    return e;
}

// lhs >= rhs where rhs lies in [rhs_lo, rhs_hi].
Certified certify_ge(const mpq_class& lhs, const mpq_class& rhs_lo, const mpq_class& rhs_hi) {
    if (lhs >= rhs_hi) return Certified::True;
    if (lhs < rhs_lo) return Certified::False;
    return Certified::Undecided;
}

// Running sums over k <= x used by every bound.
struct Running {
    long x = 0;
    mpz_class S0;  // sum phi(2k)
    mpq_class S1;  // sum phi(2k)/k
    mpq_class Psi; // sum phi(k)/k

    void step() {
        ++x;
        const long p2 = euler_phi(2 * x);
        S0 += p2;
        S1 += frac(p2, x);
        Psi += frac(euler_phi(x), x);
    }
    mpz_class A_minus() const { return 2 * S0; }
    mpq_class A_plus() const { return 4 * x * S1; }
};

std::vector<BoundCheck> check_bounds(const Running& s) {
    const long x = s.x;
    const LnEnclosure ln = ln_enclosure(x);
    const mpq_class pi2_lo = pi_lower() * pi_lower(), pi2_hi = pi_upper() * pi_upper();
    const mpq_class X(x), X2 = X * X;
    std::vector<BoundCheck> out;

    {   // A- <= 12/pi^2 x^2 + 6 x ln x + 8x + 4
        const mpq_class rhs_lo = 12 * X2 / pi2_hi + 6 * X * ln.lo + 8 * X + 4;
        const mpq_class rhs_hi = 12 * X2 / pi2_lo + 6 * X * ln.hi + 8 * X + 4;
        const mpq_class lhs(s.A_minus());
        Certified c = lhs <= rhs_lo ? Certified::True : lhs > rhs_hi ? Certified::False : Certified::Undecided;
        out.push_back({"A_minus_upper", lhs.get_d(), rhs_lo.get_d(), c});
    }
    {   // Psi >= -ln x + 6/pi^2 x - 1
        const mpq_class rhs_lo = -ln.hi + 6 * X / pi2_hi - 1, rhs_hi = -ln.lo + 6 * X / pi2_lo - 1;
        out.push_back({"Psi_lower", s.Psi.get_d(), rhs_hi.get_d(), certify_ge(s.Psi, rhs_lo, rhs_hi)});
    }
    {   // A+ >= 24/pi^2 x^2 - 4 x ln x - 4x
        const mpq_class rhs_lo = 24 * X2 / pi2_hi - 4 * X * ln.hi - 4 * X;
        const mpq_class rhs_hi = 24 * X2 / pi2_lo - 4 * X * ln.lo - 4 * X;
        const mpq_class lhs = s.A_plus();
        out.push_back({"A_plus_lower", lhs.get_d(), rhs_hi.get_d(), certify_ge(lhs, rhs_lo, rhs_hi)});
    }
    {   // A >= 12/pi^2 x^2 - 10 x ln x - 12x - 4
        const mpq_class rhs_lo = 12 * X2 / pi2_hi - 10 * X * ln.hi - 12 * X - 4;
        const mpq_class rhs_hi = 12 * X2 / pi2_lo - 10 * X * ln.lo - 12 * X - 4;
        const mpq_class lhs = s.A_plus() - s.A_minus();
        out.push_back({"A_lower", lhs.get_d(), rhs_hi.get_d(), certify_ge(lhs, rhs_lo, rhs_hi)});
    }
    return out;
}

std::vector<int> mobius_sieve(long n) {
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 1);
    std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long> primes;
    mu[0] = 0;
    for (long i = 2; i <= n; ++i) {
        if (!composite[static_cast<std::size_t>(i)]) {
            primes.push_back(i);
            mu[static_cast<std::size_t>(i)] = -1;
        }
        for (long p : primes) {
            if (i * p > n) break;
            composite[static_cast<std::size_t>(i * p)] = 1;
            if (i % p == 0) {
                mu[static_cast<std::size_t>(i * p)] = 0;
                break;
            }
            mu[static_cast<std::size_t>(i * p)] = -mu[static_cast<std::size_t>(i)];
        }
    }
    return mu;
}

std::vector<long> phi_sieve(long n) {
    std::vector<long> phi(static_cast<std::size_t>(n) + 1);
    std::iota(phi.begin(), phi.end(), 0L);
    for (long p = 2; p <= n; ++p) {
        if (phi[static_cast<std::size_t>(p)] != p) continue;
        for (long m = p; m <= n; m += p) phi[static_cast<std::size_t>(m)] -= phi[static_cast<std::size_t>(m)] / p;
    }
    return phi;
}

mpq_class psi_inversion(long x, const std::vector<int>& mu) {
    mpq_class s = 0;
    for (long k = 1; k <= x; ++k)
        if (mu[static_cast<std::size_t>(k)]) s += frac((x / k) * mu[static_cast<std::size_t>(k)], k);
    return s;
}

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, m))
        if (e & 1) r = mulmod(r, a, m);
    return r;
}

}  // namespace

SummatoryReport summatory_checks(long x) {
    if (x < 1) throw DomainError("summatory_checks needs x >= 1");
    if (x > 1'000'000) throw BudgetTooLarge("summatory_checks above 1e6");
    const std::vector<int> mu = mobius_sieve(x);
    SummatoryReport r;
    r.x = x;
    Running s;
    long phi_sum = 0;
    while (s.x < x) {
        s.step();
        phi_sum += euler_phi(s.x);
    }
    r.Phi_direct = phi_sum;
    __int128 inv = 0;
    for (long k = 1; k <= x; ++k) {
        const __int128 q = x / k;
        inv += mu[static_cast<std::size_t>(k)] * q * (q + 1);
    }
    r.Phi_inversion = static_cast<long>(inv / 2);
    r.Psi_direct = s.Psi;
    r.Psi_inversion = psi_inversion(x, mu);
    r.agree = r.Phi_direct == r.Phi_inversion && r.Psi_direct == r.Psi_inversion;
    r.bounds = check_bounds(s);
    return r;
}

SummatorySweep summatory_sweep(long x_max, long exact_through) {
    if (x_max < 1) throw DomainError("summatory_sweep needs x_max >= 1");
    SummatorySweep sw;
    sw.x_max = x_max;
    sw.exact_through = std::min(exact_through, x_max);
    const std::vector<int> mu = mobius_sieve(x_max);
    const std::vector<long> phi = phi_sieve(x_max);
    auto MU = [&](long k) { return mu[static_cast<std::size_t>(k)]; };
    auto PHI = [&](long k) { return phi[static_cast<std::size_t>(k)]; };

    // Mertens prefix sums for the blockwise inversion form of Phi.
    std::vector<long> mertens(static_cast<std::size_t>(x_max) + 1, 0);
    for (long k = 1; k <= x_max; ++k) mertens[static_cast<std::size_t>(k)] = mertens[static_cast<std::size_t>(k - 1)] + MU(k);

    // Divisor lists for the Psi increments.
    std::vector<std::vector<int>> divisors(static_cast<std::size_t>(x_max) + 1);
    for (long d = 1; d <= x_max; ++d)
        if (MU(d))
            for (long m = d; m <= x_max; m += d) divisors[static_cast<std::size_t>(m)].push_back(static_cast<int>(d));

    const u64 primes[2] = {(1ULL << 61) - 1, 4611686018427387847ULL};  // 2^61 - 1 and a prime below 2^62
    std::vector<u64> prefix[2], inv_k[2];
    for (int t = 0; t < 2; ++t) {
        const u64 P = primes[t];
        inv_k[t].assign(static_cast<std::size_t>(x_max) + 1, 0);
        prefix[t].assign(static_cast<std::size_t>(x_max) + 1, 0);
        for (long k = 1; k <= x_max; ++k) {
            inv_k[t][static_cast<std::size_t>(k)] = powmod(static_cast<u64>(k), P - 2, P);
            const u64 term = MU(k) == 0 ? 0 : MU(k) > 0 ? inv_k[t][static_cast<std::size_t>(k)] : P - inv_k[t][static_cast<std::size_t>(k)];
            prefix[t][static_cast<std::size_t>(k)] = (prefix[t][static_cast<std::size_t>(k - 1)] + term) % P;
        }
    }

    long Phi_direct = 0;
    u64 psi_direct_mod[2] = {0, 0};
    mpq_class psi_direct_exact = 0;
    for (long x = 1; x <= x_max; ++x) {
        Phi_direct += PHI(x);
        // Phi by inversion, grouped over blocks of equal floor(x/k)
        __int128 inv = 0;
        for (long k = 1; k <= x;) {
            const long q = x / k, k2 = x / q;
            inv += static_cast<__int128>(mertens[static_cast<std::size_t>(k2)] - mertens[static_cast<std::size_t>(k - 1)]) * q * (q + 1);
            k = k2 + 1;
        }
        if (inv / 2 != Phi_direct) ++sw.Phi_mismatches;

        // Psi increments: direct adds phi(x)/x; floor(x/k) - floor((x-1)/k) = [k | x],
        // so the inversion form adds sum_{k | x} mu(k)/k. Compare x times each, exactly.
        long inc = 0;
        for (int d : divisors[static_cast<std::size_t>(x)]) inc += MU(d) * (x / d);
        if (inc != PHI(x)) ++sw.Psi_increment_mismatches;

        for (int t = 0; t < 2; ++t) {
            const u64 P = primes[t];
            psi_direct_mod[t] = (psi_direct_mod[t] + mulmod(static_cast<u64>(PHI(x)) % P, inv_k[t][static_cast<std::size_t>(x)], P)) % P;
            u64 inv_mod = 0;
            for (long k = 1; k <= x;) {
                const long q = x / k, k2 = x / q;
                const u64 block = (prefix[t][static_cast<std::size_t>(k2)] + P - prefix[t][static_cast<std::size_t>(k - 1)]) % P;
                inv_mod = (inv_mod + mulmod(block, static_cast<u64>(q) % P, P)) % P;
                k = k2 + 1;
            }
            if (inv_mod != psi_direct_mod[t]) ++sw.Psi_modular_mismatches;
        }

        psi_direct_exact += frac(PHI(x), x);
        if (x <= sw.exact_through || x == x_max)
            if (psi_inversion(x, mu) != psi_direct_exact) ++sw.Psi_exact_mismatches;
    }
    return sw;
}

bool BoundSweep::all_hold() const {
    for (long f : failures)
        if (f) return false;
    return undecided == 0;
}

BoundSweep bounds_sweep(long x_lo, long x_hi) {
    if (x_lo < 2 || x_hi < x_lo) throw DomainError("bounds_sweep needs 2 <= x_lo <= x_hi");
    BoundSweep sw;
    sw.x_lo = x_lo;
    sw.x_hi = x_hi;
    Running s;
    while (s.x < x_lo - 1) s.step();
    while (s.x < x_hi) {
        s.step();
        const auto checks = check_bounds(s);
        for (std::size_t i = 0; i < checks.size(); ++i) {
            if (checks[i].holds == Certified::Undecided) ++sw.undecided;
            if (checks[i].holds != Certified::False) continue;
            if (!sw.failures[i]++) sw.first_failure[i] = s.x;
        }
    }
    return sw;
}

C1ScanReport c1_threshold_scan(const mpq_class& ell_E, long x_max) {
    if (ell_E <= 0) throw DomainError("ell_E must be positive");
    if (x_max < 30) throw DomainError("c1_threshold_scan needs x_max >= 30");
    C1ScanReport r;
    r.ell_E = ell_E;
    r.x_max = x_max;
    const mpq_class pi2_lo = pi_lower() * pi_lower(), pi2_hi = pi_upper() * pi_upper();

    // With L = 4 ell_E x, A(L) = 4x S1 - 2 S0 and c1 L^2 = 6x^2/pi^2, independent of ell_E.
    Running s;
    std::vector<Certified> holds(static_cast<std::size_t>(x_max) + 1, Certified::True);
    while (s.x < x_max) {
        s.step();
        const mpq_class A = s.A_plus() - mpq_class(s.A_minus());
        const mpq_class target = mpq_class(6 * s.x * s.x);
        Certified c = A * pi2_lo >= target ? Certified::True : A * pi2_hi < target ? Certified::False : Certified::Undecided;
        holds[static_cast<std::size_t>(s.x)] = c;
        if (c == Certified::Undecided) ++r.undecided;
        if (s.x == 30) {
            r.A_at_30 = A;
            r.c1L2_at_30 = mpq_class(mpq_class(3 * 120 * 120) / (8 * pi2_lo)).get_d();
            r.holds_at_30 = c == Certified::True;
        }
    }
    long x_star = x_max + 1;
    while (x_star > 1 && holds[static_cast<std::size_t>(x_star - 1)] == Certified::True) --x_star;
    r.x_star = x_star;
    r.x_star_within_30 = x_star <= 30;

    const long x = 30;
    const LnEnclosure ln = ln_enclosure(x);
    const mpq_class X(x);
    const mpq_class lhs_lo = -2 * X * ln.hi - 12 * X - 4, lhs_hi = -2 * X * ln.lo - 12 * X - 4;
    const mpq_class rhs_lo = -6 * X * X / pi2_lo, rhs_hi = -6 * X * X / pi2_hi;
    Certified c = lhs_lo >= rhs_hi ? Certified::True : lhs_hi < rhs_lo ? Certified::False : Certified::Undecided;
    r.intermediate_at_30 = {"intermediate_x30", lhs_hi.get_d(), rhs_hi.get_d(), c};
    return r;
}

long c2_exponent(int g, int b, int c, C2Exponent convention) {
    return 6L * g - 6 + (convention == C2Exponent::Theorem ? 2L * b : b) + 2L * c;
}

double default_tau(double B) {
    if (!(B > 0)) throw DomainError("B must be positive");
    return 2.0 * std::asinh(1.0 / std::sinh(B / 2.0));
}

LogScalar c2_dehn_thurston_bound(const C2Params& params) {
    if (params.g < 0 || params.b < 0 || params.c < 0) throw DomainError("surface type must be nonnegative");
    if (!(params.B > 0)) throw DomainError("B must be positive");
    if (params.tau && !(*params.tau > 0)) throw DomainError("tau must be positive");
    const long e = c2_exponent(params.g, params.b, params.c, params.convention);

    // log2(1/tau + 1/B); for long pants curves tau = 4 e^{-B/2} to double precision
    double log2_base = 0;
    if (params.tau) {
        log2_base = std::log2(1.0 / *params.tau + 1.0 / params.B);
    } else if (params.B / 2 < 30) {
        log2_base = std::log2(1.0 / default_tau(params.B) + 1.0 / params.B);
    } else {
        log2_base = params.B / 2 * std::log2(std::exp(1.0)) - 2.0;
    }
    return LogScalar::from_log2(static_cast<double>(e) * log2_base);
}

}  // namespace surfcov
