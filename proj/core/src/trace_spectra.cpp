#include "surfcov/trace_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "surfcov/errors.hpp"

namespace surfcov {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// QMat

QMat QMat::identity(int n) {
    QMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::permutation(const std::vector<int>& perm) {
    QMat m(static_cast<int>(perm.size()));
    for (std::size_t i = 0; i < perm.size(); ++i) m(static_cast<int>(i), perm[i]) = 1;
    return m;
}

QMat operator*(const QMat& x, const QMat& y) {
    if (x.n_ != y.n_) throw DimensionError("matrix sizes differ");
    QMat out(x.n_);
    for (int i = 0; i < x.n_; ++i)
        for (int k = 0; k < x.n_; ++k) {
            const mpq_class& a = x(i, k);
            if (a == 0) continue;
            for (int j = 0; j < x.n_; ++j)
                if (y(k, j) != 0) out(i, j) += a * y(k, j);
        }
    return out;
}

mpq_class QMat::trace() const {
    mpq_class t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

mpq_class QMat::det() const {
    QMat m = *this;
    mpq_class d = 1;
    for (int c = 0; c < n_; ++c) {
        int piv = c;
        while (piv < n_ && m(piv, c) == 0) ++piv;
        if (piv == n_) return 0;
        if (piv != c) {
            for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n_; ++r) {
            if (m(r, c) == 0) continue;
            const mpq_class f = m(r, c) / m(c, c);
            for (int j = c; j < n_; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

QMat QMat::inverse() const {
    QMat m = *this, inv = identity(n_);
    for (int c = 0; c < n_; ++c) {
        int piv = c;
        while (piv < n_ && m(piv, c) == 0) ++piv;
        if (piv == n_) throw PreconditionViolated("singular matrix");
        if (piv != c)
            for (int j = 0; j < n_; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        const mpq_class s = 1 / m(c, c);
        for (int j = 0; j < n_; ++j) {
            m(c, j) *= s;
            inv(c, j) *= s;
        }
        for (int r = 0; r < n_; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const mpq_class f = m(r, c);
            for (int j = 0; j < n_; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

QMat QMat::block(int offset, int size) const {
    if (offset < 0 || size < 0 || offset + size > n_) throw DimensionError("block out of range");
    QMat b(size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) b(i, j) = (*this)(offset + i, offset + j);
    return b;
}

MatrixXcd QMat::to_complex() const {
    MatrixXcd m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).get_d();
    return m;
}

QMat direct_sum(const std::vector<QMat>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.size();
    QMat out(n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.size(); ++i)
            for (int j = 0; j < b.size(); ++j) out(off + i, off + j) = b(i, j);
        off += b.size();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian rationals

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw PreconditionViolated("inverse of zero");
    const mpq_class n = re * re + im * im;
    return {re / n, -im / n};
}

GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
    return {x.re + y.re, x.im + y.im};
}
GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
    return {x.re - y.re, x.im - y.im};
}
GaussianRational operator-(const GaussianRational& x) { return {-x.re, -x.im}; }
GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) { return x * y.inverse(); }

std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return z.re.get_str();
    return z.re.get_str() + (z.im < 0 ? " - " : " + ") + mpq_class(abs(z.im)).get_str() + "i";
}

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

// ---------------------------------------------------------------------------
// LinearRep

namespace {

constexpr double kDetTol = 1e-9;
constexpr double kRelatorTol = 1e-8;

double max_abs(const MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

LinearRep::LinearRep(const SurfaceSig& sig, Field field, std::vector<MatrixXcd> images)
    : sig_(sig), field_(field), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != sig.num_generators())
        throw DimensionError("expected one image per generator");
    n_ = static_cast<int>(images_.front().rows());
    if (n_ < 2) throw DimensionError("representation dimension must be at least 2");
    for (const auto& m : images_) {
        if (m.rows() != n_ || m.cols() != n_) throw DimensionError("images must be square of one size");
        if (std::abs(m.determinant() - cd(1)) > kDetTol * std::max(1.0, max_abs(m)))
            throw PreconditionViolated("generator image does not have determinant 1");
        if (field == Field::Real && m.imag().cwiseAbs().maxCoeff() != 0)
            throw DomainError("real representation with non-real entries");
        inverses_.push_back(m.inverse());
    }
    if (relator_residual() > kRelatorTol) throw NotAHomomorphism("relator image is not the identity");
}

LinearRep::LinearRep(const SurfaceSig& sig, std::vector<QMat> images, int psi_dim)
    : sig_(sig), field_(Field::Real), psi_dim_(psi_dim) {
    if (static_cast<int>(images.size()) != sig.num_generators())
        throw DimensionError("expected one image per generator");
    n_ = images.front().size();
    if (n_ < 2) throw DimensionError("representation dimension must be at least 2");
    if (psi_dim < 0 || psi_dim > n_) throw DimensionError("psi block larger than the representation");
    std::vector<QMat> inv;
    for (const auto& m : images) {
        if (m.size() != n_) throw DimensionError("images must be square of one size");
        if (m.det() != 1) throw PreconditionViolated("generator image does not have determinant 1");
        inv.push_back(m.inverse());
        images_.push_back(m.to_complex());
        inverses_.push_back(inv.back().to_complex());
    }
    exact_ = std::move(images);
    exact_inverses_ = std::move(inv);
    if (!(evaluate_exact(relator_word(sig)) == QMat::identity(n_)))
        throw NotAHomomorphism("relator image is not the identity");
}

const std::vector<QMat>& LinearRep::exact_images() const {
    if (!exact_) throw PreconditionViolated("representation has no exact images");
    return *exact_;
}

MatrixXcd LinearRep::evaluate(const Word& w) const {
    MatrixXcd m = MatrixXcd::Identity(n_, n_);
    for (Letter x : w.letters) {
        const auto g = static_cast<std::size_t>(generator_of(x));
        m = m * (is_inverse_letter(x) ? inverses_[g] : images_[g]);
    }
    return m;
}

QMat LinearRep::evaluate_exact(const Word& w) const {
    if (!exact_) throw PreconditionViolated("representation has no exact images");
    QMat m = QMat::identity(n_);
    for (Letter x : w.letters) {
        const auto g = static_cast<std::size_t>(generator_of(x));
        m = m * (is_inverse_letter(x) ? (*exact_inverses_)[g] : (*exact_)[g]);
    }
    return m;
}

cd LinearRep::trace(const Word& w) const { return evaluate(w).trace(); }

double LinearRep::relator_residual() const {
    return max_abs(evaluate(relator_word(sig_)) - MatrixXcd::Identity(n_, n_));
}

LinearRep embed_sl2(const LinearRep& rep2, int N) {
    if (rep2.dimension() != 2) throw DimensionError("embed_sl2 needs a 2-dimensional representation");
    if (N < 2) throw DimensionError("target dimension must be at least 2");
    if (rep2.is_exact()) {
        std::vector<QMat> out;
        for (const auto& m : rep2.exact_images()) out.push_back(direct_sum({m, QMat::identity(N - 2)}));
        return LinearRep(rep2.sig(), std::move(out));
    }
    std::vector<MatrixXcd> out;
    for (const auto& m : rep2.images()) {
        MatrixXcd big = MatrixXcd::Identity(N, N);
        big.topLeftCorner(2, 2) = m;
        out.push_back(std::move(big));
    }
    return LinearRep(rep2.sig(), rep2.field(), std::move(out));
}

// ---------------------------------------------------------------------------
// Block representations from finite quotients

FiniteGroupRep permutation_representation(int degree) {
    return {degree,
            [degree](const std::vector<int>& perm) {
                if (static_cast<int>(perm.size()) != degree) throw DimensionError("permutation of the wrong degree");
                return QMat::permutation(perm);
            },
            "permutation"};
}

FiniteGroupRep sign_representation() {
    return {1,
            [](const std::vector<int>& perm) {
                std::vector<char> seen(perm.size(), 0);
                int sign = 1;
                for (std::size_t i = 0; i < perm.size(); ++i) {
                    if (seen[i]) continue;
                    std::size_t len = 0;
                    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
                        seen[j] = 1;
                        ++len;
                    }
                    if (len % 2 == 0) sign = -sign;
                }
                return QMat::scalar(sign);
            },
            "sign"};
}

LinearRep block_rep_from_finite_quotient(const PermCover& phi, const FiniteGroupRep& psi, int N,
                                         BlockVariant variant) {
    const int copies = variant == BlockVariant::Doubled ? 2 : 1;
    const int used = copies * psi.dim + 1;
    if (psi.dim < 1 || N < used) throw DimensionError("N must be at least " + std::to_string(used));
    std::vector<QMat> images;
    for (const auto& perm : phi.gen_perms) {
        const QMat m = psi.image(perm);
        if (m.size() != psi.dim) throw DimensionError("psi returned a matrix of the wrong size");
        const mpq_class d = m.det();
        if (d == 0) throw NotAHomomorphism("psi has a singular image");
        std::vector<QMat> blocks(static_cast<std::size_t>(copies), m);
        mpq_class slot = 1 / d;
        if (copies == 2) slot *= slot;
        blocks.push_back(QMat::scalar(slot));
        if (N > used) blocks.push_back(QMat::identity(N - used));
        images.push_back(direct_sum(blocks));
    }
    return LinearRep(phi.sig, std::move(images), psi.dim);
}

PermCover homology_mod2_cover(const SurfaceSig& sig) {
    const int gens = sig.num_generators();
    if (gens > 10) throw BudgetTooLarge("homology quotient above 2^10 sheets");
    const int degree = 1 << gens;
    RawCover raw{sig.genus(), degree, {}};
    for (int j = 0; j < gens; ++j) {
        std::vector<int> images(static_cast<std::size_t>(degree));
        for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = (i ^ (1 << j)) + 1;
        raw.perms.push_back(std::move(images));
    }
    return validate_cover(raw);
}

// ---------------------------------------------------------------------------
// Random representations

namespace {

struct Sampler {
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};
    Field field;

    cd entry() {
        const double re = normal(rng);
        return field == Field::Real ? cd(re, 0) : cd(re, normal(rng)) / std::sqrt(2.0);
    }

    // det^(1/N) with the branch kept real for real fields
    std::optional<cd> root_of_det(cd det, int N) {
        if (field == Field::Real) {
            if (det.real() < 0 && N % 2 == 0) return std::nullopt;
            const double r = std::pow(std::abs(det.real()), 1.0 / N);
            return cd(det.real() < 0 ? -r : r, 0);
        }
        return std::pow(det, 1.0 / N);
    }

    std::optional<MatrixXcd> sl(int N) {
        MatrixXcd m(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(i, j) = entry();
        cd det = m.determinant();
        if (std::abs(det) < 1e-3) return std::nullopt;
        if (field == Field::Real && det.real() < 0) {
            m.row(0) *= -1;
            det = -det;
        }
        auto r = root_of_det(det, N);
        if (!r) return std::nullopt;
        return MatrixXcd(m / *r);
    }
};

MatrixXcd commutator(const MatrixXcd& a, const MatrixXcd& b) { return a * b * a.inverse() * b.inverse(); }

// X, Y with X Y X^-1 Y^-1 = T, or nothing when the configuration is unusable.
std::optional<std::pair<MatrixXcd, MatrixXcd>> solve_commutator(const MatrixXcd& T, Sampler& s) {
    const int N = static_cast<int>(T.rows());
    Eigen::ComplexEigenSolver<MatrixXcd> es(T);
    if (es.info() != Eigen::Success) return std::nullopt;
    Eigen::VectorXcd d = es.eigenvalues();
    MatrixXcd S = es.eigenvectors();
    if (s.field == Field::Real) {
        if (d.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff())) return std::nullopt;
        for (int j = 0; j < N; ++j) {
            Eigen::Index k;
            S.col(j).cwiseAbs().maxCoeff(&k);
            S.col(j) /= S(k, j) / std::abs(S(k, j));
        }
        d = d.real().cast<cd>();
        S = S.real().cast<cd>();
    }
    Eigen::JacobiSVD<MatrixXcd> svd(S);
    const auto sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-8 * sv(0)) return std::nullopt;

    // diag(x) P diag(x)^-1 P^-1 = diag(x_j / x_{j-1}) for the signed cyclic shift P
    Eigen::VectorXcd x(N);
    x(0) = 1;
    for (int j = 1; j < N; ++j) x(j) = x(j - 1) * d(j);
    MatrixXcd P = MatrixXcd::Zero(N, N);
    for (int j = 0; j + 1 < N; ++j) P(j + 1, j) = 1;
    P(0, N - 1) = (N % 2 == 0) ? -1.0 : 1.0;
    // a random diagonal factor commutes with diag(x), so it leaves the commutator unchanged
    Eigen::VectorXcd z(N);
    for (int j = 0; j < N; ++j) z(j) = std::exp(0.5 * s.normal(s.rng)) * (s.field == Field::Real ? cd(s.normal(s.rng) < 0 ? -1 : 1) : std::exp(cd(0, s.normal(s.rng))));
    const auto zr = s.root_of_det(z.prod(), N);
    const auto xr = s.root_of_det(x.prod(), N);
    if (!zr || !xr) return std::nullopt;
    const MatrixXcd Sinv = S.inverse();
    MatrixXcd X = S * (x / *xr).asDiagonal() * Sinv;
    MatrixXcd Y = S * P * (z / *zr).asDiagonal() * Sinv;
    if (s.field == Field::Real) {
        X = X.real().cast<cd>();
        Y = Y.real().cast<cd>();
    }
    return std::pair{X, Y};
}

}  // namespace

LinearRep random_rep(const SurfaceSig& sig, int N, Field field, std::uint64_t seed) {
    if (N < 2) throw DimensionError("representation dimension must be at least 2");
    Sampler s{std::mt19937_64(seed), {}, field};
    const int g = sig.genus();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<MatrixXcd> images;
        MatrixXcd C = MatrixXcd::Identity(N, N);
        bool ok = true;
        for (int k = 0; k + 1 < g && ok; ++k) {
            auto A = s.sl(N), B = s.sl(N);
            if (!A || !B) {
                ok = false;
                break;
            }
            C = C * commutator(*A, *B);
            images.push_back(*A);
            images.push_back(*B);
        }
        if (!ok) continue;
        auto last = solve_commutator(C.inverse(), s);
        if (!last) continue;
        images.push_back(last->first);
        images.push_back(last->second);
        try {
            return LinearRep(sig, field, std::move(images));
        } catch (const PreconditionViolated&) {
        } catch (const NotAHomomorphism&) {
        }
    }
    throw SamplingFailed("no usable sample after 1000 attempts");
}

// ---------------------------------------------------------------------------
// Spectra

std::vector<SimpleElevation> simple_elevations(const HyperbolicModel& model, const PermCover& cover, int budget) {
    if (budget < 1) throw DomainError("budget must be at least 1");
    if (!(model.sig() == cover.sig)) throw DomainError("model and cover are over different surfaces");
    std::vector<SimpleElevation> out;
    for (const auto& c : enumerate_classes(cover.sig, budget)) {
        // simple curves elevate to simple curves
        if (self_intersection(model, c) == 0) {
            const auto perm = cover.word_perm(c.word);
            std::vector<char> seen(perm.size(), 0);
            for (std::size_t i = 0; i < perm.size(); ++i) {
                if (seen[i]) continue;
                int len = 0;
                for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
                    seen[j] = 1;
                    ++len;
                }
                out.push_back({c, len, static_cast<int>(i)});
            }
            continue;
        }
        for (const auto& e : elevation_report(model, cover, c).entries)
            if (e.simple) out.push_back({c, e.cycle_length, e.base_sheet});
    }
    return out;
}

SpectrumSample simple_trace_spectrum(const std::vector<SimpleElevation>& elevations, const LinearRep& rep,
                                     int budget) {
    SpectrumSample s;
    s.budget = budget;
    for (const auto& e : elevations) {
        if (!(e.base.word.sig == rep.sig())) throw DomainError("representation and cover are over different surfaces");
        for (int o : {1, -1}) {
            const Word w = power(e.base.word, o * e.cycle_length);
            SpectrumEntry entry{e.base, e.cycle_length, e.base_sheet, o, rep.trace(w), std::nullopt};
            if (rep.is_exact()) entry.exact_trace = rep.evaluate_exact(w).trace();
            s.entries.push_back(std::move(entry));
        }
    }
    return s;
}

SpectrumSample simple_trace_spectrum(const HyperbolicModel& model, const PermCover& cover, const LinearRep& rep,
                                     int budget) {
    return simple_trace_spectrum(simple_elevations(model, cover, budget), rep, budget);
}

bool spectra_equal(const SpectrumSample& x, const SpectrumSample& y, double rel_tol) {
    if (x.entries.size() != y.entries.size()) return false;
    const bool exact = std::all_of(x.entries.begin(), x.entries.end(), [](const auto& e) { return e.exact_trace; }) &&
                       std::all_of(y.entries.begin(), y.entries.end(), [](const auto& e) { return e.exact_trace; });
    if (exact) {
        std::vector<mpq_class> a, b;
        for (const auto& e : x.entries) a.push_back(*e.exact_trace);
        for (const auto& e : y.entries) b.push_back(*e.exact_trace);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
    auto key = [](const cd& c) { return std::pair{c.real(), c.imag()}; };
    std::vector<cd> a, b;
    for (const auto& e : x.entries) a.push_back(e.trace);
    for (const auto& e : y.entries) b.push_back(e.trace);
    auto by_real = [&](const cd& u, const cd& v) { return key(u) < key(v); };
    std::sort(a.begin(), a.end(), by_real);
    std::sort(b.begin(), b.end(), by_real);
    auto close = [&](const cd& u, const cd& v) {
        return std::abs(u - v) <= rel_tol * std::max({1.0, std::abs(u), std::abs(v)});
    };
    // Walk clusters of nearly equal real part and match inside each by imaginary part.
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i + 1;
        while (j < a.size() && std::abs(a[j].real() - a[j - 1].real()) <= rel_tol * std::max(1.0, std::abs(a[j].real())))
            ++j;
        std::vector<cd> ca(a.begin() + static_cast<long>(i), a.begin() + static_cast<long>(j));
        std::vector<cd> cb(b.begin() + static_cast<long>(i), b.begin() + static_cast<long>(j));
        auto by_imag = [](const cd& u, const cd& v) { return u.imag() < v.imag(); };
        std::sort(ca.begin(), ca.end(), by_imag);
        std::sort(cb.begin(), cb.end(), by_imag);
        for (std::size_t k = 0; k < ca.size(); ++k)
            if (!close(ca[k], cb[k])) return false;
        i = j;
    }
    return true;
}

GenericReport distinguish_generic(const HyperbolicModel& model, const PermCover& p, const PermCover& q, int N,
                                  int samples, int budget, std::uint64_t seed, Field field, int jobs) {
    if (samples < 0) throw DomainError("samples must be nonnegative");
    if (jobs < 1) throw DomainError("jobs must be at least 1");
    if (!(p.sig == q.sig)) throw DomainError("covers are over different surfaces");
    GenericReport r;
    r.N = N;
    r.field = field;
    r.samples = samples;
    r.budget = budget;
    r.seed = seed;
    if (samples == 0) return r;
    const auto ep = simple_elevations(model, p, budget);
    const auto eq = simple_elevations(model, q, budget);
    r.elevations_p = ep.size();
    r.elevations_q = eq.size();

    r.per_seed.resize(static_cast<std::size_t>(samples));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(samples));
    auto work = [&](int first) {
        for (int i = first; i < samples; i += jobs) {
            const auto at = static_cast<std::size_t>(i);
            const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
            try {
                const LinearRep rep = random_rep(p.sig, N, field, sd);
                const bool d =
                    !spectra_equal(simple_trace_spectrum(ep, rep, budget), simple_trace_spectrum(eq, rep, budget));
                r.per_seed[at] = {sd, d};
            } catch (...) {
                failures[at] = std::current_exception();
            }
        }
    };
    const int workers = std::min(jobs, samples);
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    // Report the failure of the first failing seed, as a sequential run would.
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    long differ = 0;
    for (const auto& o : r.per_seed) differ += o.differ;
    r.fraction_differ = static_cast<double>(differ) / samples;
    return r;
}

// ---------------------------------------------------------------------------
// Exact algebra

namespace {

template <class F>
AlgebraCheck<F> algebra_check(const F& x, const std::optional<F>& y_in, const F& z) {
    const F zero{}, one{1}, two{2};
    if (z == zero) throw PreconditionViolated("z must be nonzero");
    const F zi = one / z;
    const F y = y_in ? *y_in : x + zi - z;
    if (x == y) throw PreconditionViolated("x and y coincide");
    AlgebraCheck<F> c{x, y, z, {}, {}, false, false};
    c.difference = (two * x + zi * zi) - (two * y + z * z);
    const F zm = z - one;
    c.expected = -(zm * zm * zm * (z + one)) * zi * zi;
    c.identity_holds = c.difference == c.expected;
    c.nonzero = !(c.difference == zero);
    return c;
}

}  // namespace

AlgebraCheck<mpq_class> annoying_algebra_check(const mpq_class& x, const std::optional<mpq_class>& y,
                                               const mpq_class& z) {
    return algebra_check<mpq_class>(x, y, z);
}

AlgebraCheck<GaussianRational> annoying_algebra_check(const GaussianRational& x,
                                                      const std::optional<GaussianRational>& y,
                                                      const GaussianRational& z) {
    return algebra_check<GaussianRational>(x, y, z);
}

bool det_homology_check(const LinearRep& rep, const Word& w1, const Word& w2) {
    if (!(w1.sig == rep.sig()) || !(w2.sig == rep.sig())) throw DomainError("words over a different surface");
    if (abelianize(w1) != abelianize(w2)) throw PreconditionViolated("words are not homologous");
    if (rep.is_exact()) {
        const QMat a = rep.evaluate_exact(w1), b = rep.evaluate_exact(w2);
        if (a.det() != b.det()) return false;
        if (rep.psi_dim() > 0 && a.block(0, rep.psi_dim()).det() != b.block(0, rep.psi_dim()).det()) return false;
        return true;
    }
    const cd a = rep.evaluate(w1).determinant(), b = rep.evaluate(w2).determinant();
    return std::abs(a - b) <= kDetTol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace surfcov
