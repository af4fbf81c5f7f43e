#pragma once

#include <array>
#include <optional>
#include <vector>

#include "surfcov/words.hpp"

namespace surfcov {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double trace() const noexcept { return a + d; }
    double det() const noexcept { return a * d - b * c; }
    Mat2 inverse() const noexcept { return {d, -b, -c, a}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

// Stabilizer of base_point under the right action where sheet i goes to
// gen_perms[g][i] along generator g (0-indexed sheets, generators a1,b1,a2,...).
struct SubgroupFilter {
    std::vector<std::vector<int>> gen_perms;
    int base_point = 0;

    int act(int sheet, const Word& w) const;
    bool contains(const Word& w) const { return act(base_point, w) == base_point; }
};

class HyperbolicModel {
public:
    HyperbolicModel(const SurfaceSig& sig, double tolerance, double enum_radius_margin);

    const SurfaceSig& sig() const noexcept { return sig_; }
    double tolerance() const noexcept { return tolerance_; }
    double enum_radius_margin() const noexcept { return margin_; }
    // Uses quad precision for every count instead of only on close calls.
    bool always_high_precision() const noexcept { return high_precision_; }

    HyperbolicModel with_margin(double margin) const;
    HyperbolicModel with_high_precision(bool on) const;

    const Mat2& letter_matrix(Letter x) const { return letters_[x]; }
    Mat2 evaluate(const Word& w) const;
    long double evaluate_trace_long(const Word& w) const;

    double inradius() const noexcept { return inradius_; }
    double circumradius() const noexcept { return circumradius_; }
    double polygon_diameter() const noexcept { return 2 * circumradius_; }
    // Tiles whose centre lies within this distance of a segment are scanned.
    double tube_radius() const noexcept { return circumradius_ + margin_; }

private:
    SurfaceSig sig_;
    double tolerance_;
    double margin_;
    bool high_precision_ = false;
    double inradius_ = 0, circumradius_ = 0;
    std::vector<Mat2> letters_;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDefaultRadiusMargin = 0.5;

HyperbolicModel fuchsian_generators(const SurfaceSig& sig, double tolerance = kDefaultTolerance,
                                    double enum_radius_margin = kDefaultRadiusMargin);

// Relator image distance from +-I, entrywise.
double relator_residual(const HyperbolicModel& model);

struct GeodesicInfo {
    CurveClass cls;
    double length = 0;
    double trace_abs = 0;
};

GeodesicInfo geodesic_length(const HyperbolicModel& model, const CurveClass& c);

long self_intersection(const HyperbolicModel& model, const CurveClass& c,
                       const std::optional<SubgroupFilter>& filter = std::nullopt);

long intersection(const HyperbolicModel& model, const CurveClass& c1, const CurveClass& c2);

// Full width 2 arsinh(csch(l/2)) of the standard collar around a simple geodesic of length l.
double collar_width(double length);

}  // namespace surfcov
