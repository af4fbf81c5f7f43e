#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "surfcov/covers.hpp"
#include "surfcov/hyperbolic.hpp"
#include "surfcov/words.hpp"

namespace surfcov {

// Dense square matrix over Q.
class QMat {
public:
    QMat() = default;
    explicit QMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static QMat identity(int n);
    // Matrix of the sheet map i -> perm[i]: row i has its 1 in column perm[i],
    // so products follow the right action on sheets.
    static QMat permutation(const std::vector<int>& perm);
    static QMat scalar(const mpq_class& v) {
        QMat m(1);
        m(0, 0) = v;
        return m;
    }

    int size() const noexcept { return n_; }
    mpq_class& operator()(int i, int j) { return a_[idx(i, j)]; }
    const mpq_class& operator()(int i, int j) const { return a_[idx(i, j)]; }

    friend QMat operator*(const QMat& x, const QMat& y);
    friend bool operator==(const QMat& x, const QMat& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    mpq_class trace() const;
    mpq_class det() const;
    QMat inverse() const;  // PreconditionViolated when singular
    QMat block(int offset, int size) const;
    Eigen::MatrixXcd to_complex() const;

private:
    int n_ = 0;
    std::vector<mpq_class> a_;
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }
};

QMat direct_sum(const std::vector<QMat>& blocks);

struct GaussianRational {
    mpq_class re, im;

    GaussianRational() = default;
    GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational inverse() const;  // PreconditionViolated at zero

    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y);
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y);
    friend GaussianRational operator-(const GaussianRational& x);
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y);
    friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y);
    friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
        return x.re == y.re && x.im == y.im;
    }
};

std::string to_string(const GaussianRational& z);

enum class Field { Real, Complex };
std::string to_string(Field f);

// Representation of the surface group into SL_N, one image per generator in
// the order a1, b1, a2, b2, ... Exact reps also carry rational images.
class LinearRep {
public:
    // Throws DimensionError for N < 2 or the wrong number or shape of images,
    // PreconditionViolated for determinants off 1 by more than 1e-9, and
    // NotAHomomorphism when the relator image is off the identity by more than 1e-8.
    LinearRep(const SurfaceSig& sig, Field field, std::vector<Eigen::MatrixXcd> images);
    // Rational images; determinant and relator are checked exactly. `psi_dim`
    // marks a leading block that carries a finite-quotient representation.
    LinearRep(const SurfaceSig& sig, std::vector<QMat> images, int psi_dim = 0);

    const SurfaceSig& sig() const noexcept { return sig_; }
    int dimension() const noexcept { return n_; }
    Field field() const noexcept { return field_; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    int psi_dim() const noexcept { return psi_dim_; }
    const std::vector<Eigen::MatrixXcd>& images() const noexcept { return images_; }
    const std::vector<QMat>& exact_images() const;

    Eigen::MatrixXcd evaluate(const Word& w) const;
    QMat evaluate_exact(const Word& w) const;  // PreconditionViolated for floating reps
    std::complex<double> trace(const Word& w) const;
    // Max entry of |rho(relator) - I|.
    double relator_residual() const;

private:
    SurfaceSig sig_;
    int n_ = 0;
    Field field_ = Field::Complex;
    int psi_dim_ = 0;
    std::vector<Eigen::MatrixXcd> images_, inverses_;
    std::optional<std::vector<QMat>> exact_, exact_inverses_;
};

// iota(A) = A + I_{N-2} block-diagonally; traces shift by N - 2.
LinearRep embed_sl2(const LinearRep& rep2, int N);

// A matrix representation psi of a finite permutation group, evaluated on
// permutations of the cover's sheets.
struct FiniteGroupRep {
    int dim = 1;
    std::function<QMat(const std::vector<int>&)> image;
    std::string name;
};

FiniteGroupRep permutation_representation(int degree);
FiniteGroupRep sign_representation();

enum class BlockVariant {
    Single,   // psi + (1/det psi) + I
    Doubled,  // psi + psi + (1/det psi)^2 + I
};

// rho(eta) = psi(phi(eta)) + 1/det psi(phi(eta)) + I, with phi the sheet action
// of the cover. DimensionError when N is too small for the blocks;
// NotAHomomorphism when rho does not kill the relator.
LinearRep block_rep_from_finite_quotient(const PermCover& phi, const FiniteGroupRep& psi, int N,
                                         BlockVariant variant = BlockVariant::Single);

// Regular action of H_1(S; Z/2) = (Z/2)^{2g} on itself: sheet i goes to
// i xor 2^j along generator j.
PermCover homology_mod2_cover(const SurfaceSig& sig);

// Seeded sample of Hom(pi_1 S, SL_N). Images of a1, ..., b_{g-1} are random;
// the last pair solves [A_g, B_g] = (prod_{k<g} [A_k, B_k])^{-1} through a
// diagonalisation of the target and a random diagonal factor. Retries on
// ill-conditioned or (for real fields) non-real configurations, then throws
// SamplingFailed.
LinearRep random_rep(const SurfaceSig& sig, int N, Field field, std::uint64_t seed);

// Elevation of a base class along a cycle of its sheet permutation.
struct SimpleElevation {
    CurveClass base;
    int cycle_length = 1;
    int base_sheet = 0;
};

// Every simple elevation of every class of length <= budget, in class order.
// Depends only on the cover, so one list serves every representation.
std::vector<SimpleElevation> simple_elevations(const HyperbolicModel& model, const PermCover& cover, int budget);

struct SpectrumEntry {
    CurveClass base;
    int cycle_length = 1;
    int base_sheet = 0;
    int orientation = 1;  // +1: w^m, -1: w^-m
    std::complex<double> trace;
    std::optional<mpq_class> exact_trace;
};

struct SpectrumSample {
    int budget = 0;
    std::vector<SpectrumEntry> entries;
};

// tr rho(w^m) and tr rho(w^-m) for each simple elevation of w with cycle length m.
SpectrumSample simple_trace_spectrum(const std::vector<SimpleElevation>& elevations, const LinearRep& rep,
                                     int budget = 0);
SpectrumSample simple_trace_spectrum(const HyperbolicModel& model, const PermCover& cover, const LinearRep& rep,
                                     int budget);

// Multiset equality of traces: exact when both carry exact traces, otherwise
// to relative tolerance rel_tol.
bool spectra_equal(const SpectrumSample& x, const SpectrumSample& y, double rel_tol = 1e-9);

struct SeedOutcome {
    std::uint64_t seed = 0;
    bool differ = false;
};

struct GenericReport {
    int N = 2;
    Field field = Field::Complex;
    int samples = 0;
    int budget = 0;
    std::uint64_t seed = 0;
    std::size_t elevations_p = 0, elevations_q = 0;
    std::vector<SeedOutcome> per_seed;
    std::optional<double> fraction_differ;  // empty when samples = 0
};

// Samples reps with seeds seed, seed + 1, ... and compares the spectra of p and q.
// Seeds are split over `jobs` worker threads; the report does not depend on jobs.
GenericReport distinguish_generic(const HyperbolicModel& model, const PermCover& p, const PermCover& q, int N,
                                  int samples, int budget, std::uint64_t seed, Field field = Field::Complex,
                                  int jobs = 1);

template <class F>
struct AlgebraCheck {
    F x, y, z;
    F difference;  // (2x + 1/z^2) - (2y + z^2)
    F expected;    // -(z - 1)^3 (z + 1) / z^2
    bool identity_holds = false;
    bool nonzero = false;
    bool ok() const { return identity_holds && nonzero; }
};

// y defaults to x + 1/z - z. PreconditionViolated for z = 0 or x = y.
AlgebraCheck<mpq_class> annoying_algebra_check(const mpq_class& x, const std::optional<mpq_class>& y,
                                               const mpq_class& z);
AlgebraCheck<GaussianRational> annoying_algebra_check(const GaussianRational& x,
                                                      const std::optional<GaussianRational>& y,
                                                      const GaussianRational& z);

// det rho(w1) = det rho(w2) for homologous w1, w2 (PreconditionViolated
// otherwise). Exact reps compare exactly, including the determinant of the
// psi block; floating reps to 1e-9.
bool det_homology_check(const LinearRep& rep, const Word& w1, const Word& w2);

}  // namespace surfcov
