#include "surfcov/logscalar.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "surfcov/errors.hpp"

namespace surfcov {

namespace {

// Below this a level-1 top is collapsed to a plain double.
constexpr double kCollapse = 1000.0;

const mpq_class& two_pow_64() {
    static const mpq_class v(mpz_class(1) << 64);
    return v;
}

std::optional<mpq_class> small_exact(const mpq_class& q) {
    if (q >= 0 && q < two_pow_64()) return q;
    return std::nullopt;
}

}  // namespace

double log2_exact(const mpz_class& z) {
    if (z <= 0) throw DomainError("log2 of a nonpositive integer");
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(m) + static_cast<double>(e);
}

double log2_exact(const mpq_class& q) {
    if (q <= 0) throw DomainError("log2 of a nonpositive rational");
    return log2_exact(mpz_class(q.get_num())) - log2_exact(mpz_class(q.get_den()));
}

void LogScalar::normalize() {
    if (!std::isfinite(top_)) throw NumericInstability("non-finite LogScalar component");
    while (level_ > 0 && top_ < kCollapse) {
        top_ = std::exp2(top_);
        --level_;
    }
}

LogScalar LogScalar::from_double(double v) {
    if (!std::isfinite(v)) throw NumericInstability("non-finite value");
    LogScalar r;
    r.top_ = v;
    return r;
}

LogScalar LogScalar::from_log2(double l) { return from_tower(1, l); }

LogScalar LogScalar::from_tower(int level, double top) {
    if (level < 0) throw DomainError("negative tower level");
    LogScalar r;
    r.level_ = level;
    r.top_ = top;
    r.normalize();
    return r;
}

LogScalar LogScalar::from_exact(const mpq_class& q) {
    LogScalar r;
    if (q > 0) {
        const double l = log2_exact(q);
        if (l >= kCollapse) {
            r.level_ = 1;
            r.top_ = l;
        } else {
            r.top_ = q.get_d();
        }
    } else {
        r.top_ = q.get_d();
    }
    r.exact_ = small_exact(q);
    return r;
}

double LogScalar::to_double() const {
    return level_ == 0 ? top_ : std::numeric_limits<double>::infinity();
}

double LogScalar::log2_value() const {
    if (level_ == 0) {
        if (top_ <= 0) throw DomainError("log2 of a nonpositive value");
        if (exact_) return log2_exact(*exact_);
        return std::log2(top_);
    }
    if (level_ == 1) return top_;
    return std::numeric_limits<double>::infinity();
}

LogScalar LogScalar::log2() const {
    if (level_ == 0) return from_double(log2_value());
    return from_tower(level_ - 1, top_);
}

LogScalar LogScalar::exp2() const {
    if (level_ == 0 && top_ < kCollapse) {
        if (exact_ && exact_->get_den() == 1 && *exact_ < 64) {
            mpz_class v(1);
            v <<= static_cast<unsigned long>(exact_->get_num().get_ui());
            return from_exact(v);
        }
        return from_double(std::exp2(top_));
    }
    return from_tower(level_ + 1, top_);
}

LogScalar operator+(const LogScalar& a, const LogScalar& b) {
    LogScalar r;
    if (a.level_ == 0 && b.level_ == 0 && std::isfinite(a.top_ + b.top_)) {
        r.top_ = a.top_ + b.top_;
        if (a.exact_ && b.exact_) r.exact_ = small_exact(*a.exact_ + *b.exact_);
        return r;
    }
    const LogScalar& hi = a < b ? b : a;
    const LogScalar& lo = a < b ? a : b;
    if (hi.level_ >= 2) return hi;
    // hi is level 1 (or a level-0 sum that overflowed); lo has a finite log2 or is nonpositive
    if (lo.level_ == 0 && lo.top_ <= 0) return hi;
    const double t = hi.log2_value();
    const double l = lo.log2_value();
    return LogScalar::from_log2(t + std::log2(1.0 + std::exp2(l - t)));
}

LogScalar operator*(const LogScalar& a, const LogScalar& b) {
    if (a.level_ == 0 && b.level_ == 0) {
        const double p = a.top_ * b.top_;
        if (std::isfinite(p) && (p == 0 || std::fabs(p) >= std::numeric_limits<double>::min())) {
            LogScalar r;
            r.top_ = p;
            if (a.exact_ && b.exact_) r.exact_ = small_exact(*a.exact_ * *b.exact_);
            return r;
        }
    }
    if ((a.level_ == 0 && a.top_ <= 0) || (b.level_ == 0 && b.top_ <= 0))
        throw DomainError("LogScalar product of a nonpositive value and an out-of-range value");
    LogScalar r = (a.log2() + b.log2()).exp2();
    if (a.exact_ && b.exact_) r.exact_ = small_exact(*a.exact_ * *b.exact_);
    return r;
}

LogScalar operator/(const LogScalar& a, const LogScalar& b) {
    if (b.level_ == 0 && b.top_ <= 0) throw DomainError("LogScalar division by a nonpositive value");
    if (a.level_ == 0 && b.level_ == 0) {
        const double q = a.top_ / b.top_;
        if (std::isfinite(q) && (q == 0 || std::fabs(q) >= std::numeric_limits<double>::min())) {
            LogScalar r;
            r.top_ = q;
            if (a.exact_ && b.exact_) r.exact_ = small_exact(*a.exact_ / *b.exact_);
            return r;
        }
    }
    if (a.level_ == 0 && a.top_ <= 0) throw DomainError("LogScalar quotient of a nonpositive value");
    const LogScalar la = a.log2(), lb = b.log2();
    LogScalar diff;
    if (la.level_ == 0 && lb.level_ == 0) {
        diff = LogScalar::from_double(la.top_ - lb.top_);
    } else if (lb < la) {
        if (la.level_ >= 2 || (lb.level_ == 0 && lb.top_ <= 0)) {
            diff = la;
        } else {
            const double t = la.log2_value(), l = lb.log2_value();
            diff = LogScalar::from_log2(t + std::log2(1.0 - std::exp2(l - t)));
        }
    } else {
        throw DomainError("LogScalar quotient below the representable range");
    }
    LogScalar r = diff.exp2();
    if (a.exact_ && b.exact_) r.exact_ = small_exact(*a.exact_ / *b.exact_);
    return r;
}

LogScalar LogScalar::pow(const LogScalar& e) const {
    if (exact_ && e.exact_ && e.exact_->get_den() == 1 && *e.exact_ >= 0 && *e.exact_ < 4096 &&
        log2_value() * e.to_double() < 64) {
        mpq_class v(1);
        for (unsigned long i = 0; i < e.exact_->get_num().get_ui(); ++i) v *= *exact_;
        return from_exact(v);
    }
    return (e * log2()).exp2();
}

bool operator<(const LogScalar& a, const LogScalar& b) {
    if (a.level_ != b.level_) return a.level_ < b.level_;
    return a.top_ < b.top_;
}

LogScalar max(const LogScalar& a, const LogScalar& b) { return a < b ? b : a; }

std::string LogScalar::describe() const {
    std::string s;
    for (int i = 0; i < level_; ++i) s += "2^";
    return s + fmt::format("{:.9g}", top_);
}

}  // namespace surfcov
