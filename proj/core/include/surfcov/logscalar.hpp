#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace surfcov {

// Positive quantity stored as an iterated power of two: value = exp2^level(top),
// where exp2^0(t) = t. The level is the least one at which top is a finite
// double, so (level, top) compares lexicographically. Quantities below 2^64
// that were computed exactly also keep the exact rational.
class LogScalar {
public:
    LogScalar() = default;

    static LogScalar from_double(double v);
    static LogScalar from_log2(double l);
    static LogScalar from_exact(const mpq_class& q);
    static LogScalar from_exact(const mpz_class& z) { return from_exact(mpq_class(z)); }
    static LogScalar from_tower(int level, double top);

    int level() const noexcept { return level_; }
    double top() const noexcept { return top_; }
    const std::optional<mpq_class>& exact() const noexcept { return exact_; }

    bool finite_double() const noexcept { return level_ == 0; }
    double to_double() const;       // +inf above the double range
    double log2_value() const;      // +inf when log2 itself overflows
    bool log2_is_finite() const noexcept { return level_ <= 1; }

    LogScalar log2() const;   // requires value > 1 when level > 0
    LogScalar exp2() const;   // 2^value

    friend LogScalar operator+(const LogScalar& a, const LogScalar& b);
    friend LogScalar operator*(const LogScalar& a, const LogScalar& b);
    friend LogScalar operator/(const LogScalar& a, const LogScalar& b);
    LogScalar pow(const LogScalar& e) const;

    friend bool operator<(const LogScalar& a, const LogScalar& b);
    friend bool operator>(const LogScalar& a, const LogScalar& b) { return b < a; }
    friend bool operator<=(const LogScalar& a, const LogScalar& b) { return !(b < a); }
    friend bool operator>=(const LogScalar& a, const LogScalar& b) { return !(a < b); }
    friend bool operator==(const LogScalar& a, const LogScalar& b) {
        return a.level_ == b.level_ && a.top_ == b.top_;
    }

    // "2^(2^(...(top)))" style rendering for diagnostics.
    std::string describe() const;

private:
    int level_ = 0;
    double top_ = 0.0;
    std::optional<mpq_class> exact_;

    void normalize();
};

LogScalar max(const LogScalar& a, const LogScalar& b);

// log2 of an exact positive rational, accurate for any size.
double log2_exact(const mpq_class& q);
double log2_exact(const mpz_class& z);

}  // namespace surfcov
