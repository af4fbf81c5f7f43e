#include "surfcov/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <functional>
#include <optional>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace surfcov {

namespace {

using Quad = boost::multiprecision::float128;

template <class T>
struct M2 {
    T a, b, c, d;

    M2 inverse() const { return {d, -b, -c, a}; }
    friend M2 operator*(const M2& x, const M2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

template <class T>
M2<T> identity() {
    return {T(1), T(0), T(0), T(1)};
}

// Side pairings of the regular 4g-gon centred at i with all angles 2pi/4g.
// Side j has its midpoint at angle 2 pi j / 4g; a_k carries side 4k+2 onto
// side 4k and b_k carries side 4k+1 onto side 4k+3.
template <class T>
std::vector<M2<T>> polygon_letters(int g) {
    using std::cos;
    using std::sin;
    using std::exp;
    using std::acosh;
    using std::tan;
    const T pi = boost::math::constants::pi<T>();
    const int n = 4 * g;
    const T d = 2 * acosh(1 / tan(pi / n));
    auto rot = [](const T& t) {
        return M2<T>{cos(t / 2), sin(t / 2), -sin(t / 2), cos(t / 2)};
    };
    const M2<T> shift{exp(d / 2), T(0), T(0), exp(-d / 2)};
    auto phi = [&](int j) { return 2 * pi * j / n; };
    auto pairing = [&](int from, int to) { return rot(phi(to)) * shift * rot(pi - phi(from)); };
    std::vector<M2<T>> out(static_cast<std::size_t>(n));
    for (int k = 0; k < g; ++k) {
        M2<T> a = pairing(4 * k + 2, 4 * k);
        M2<T> b = pairing(4 * k + 1, 4 * k + 3);
        out[static_cast<std::size_t>(4 * k + 0)] = a;
        out[static_cast<std::size_t>(4 * k + 1)] = a.inverse();
        out[static_cast<std::size_t>(4 * k + 2)] = b;
        out[static_cast<std::size_t>(4 * k + 3)] = b.inverse();
    }
    return out;
}

template <class T>
M2<T> eval(const std::vector<M2<T>>& letters, const std::vector<Letter>& w) {
    M2<T> m = identity<T>();
    for (Letter x : w) m = m * letters[x];
    return m;
}

std::vector<std::vector<int>> inverse_perms(const std::vector<std::vector<int>>& perms) {
    std::vector<std::vector<int>> inv(perms.size());
    for (std::size_t g = 0; g < perms.size(); ++g) {
        inv[g].assign(perms[g].size(), 0);
        for (std::size_t i = 0; i < perms[g].size(); ++i) inv[g][static_cast<std::size_t>(perms[g][i])] = static_cast<int>(i);
    }
    return inv;
}

// Perm images of single letters: letter_perm[x][i] = i . x
std::vector<std::vector<int>> letter_perms(const SubgroupFilter& f) {
    auto inv = inverse_perms(f.gen_perms);
    std::vector<std::vector<int>> out;
    for (std::size_t g = 0; g < f.gen_perms.size(); ++g) {
        out.push_back(f.gen_perms[g]);
        out.push_back(inv[g]);
    }
    return out;
}

// Boundary point in homogeneous coordinates (x : y), value x / y.
template <class T>
struct BPoint {
    T x, y;
};

template <class T>
BPoint<T> apply(const M2<T>& m, const BPoint<T>& p) {
    BPoint<T> q{m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y};
    using std::sqrt;
    T n = sqrt(q.x * q.x + q.y * q.y);
    return {q.x / n, q.y / n};
}

// Coordinates in which a chosen axis is the imaginary axis and the base
// point i projects to i. Letters are conjugated into this frame.
template <class T>
struct Frame {
    M2<T> N;
    std::vector<M2<T>> letters;
    T ox, oy;        // image of the polygon centre
    T log_lambda;    // translation length of the axis element
};

template <class T>
Frame<T> make_frame(const std::vector<M2<T>>& letters, const M2<T>& axis_elt) {
    using std::abs;
    using std::sqrt;
    using std::log;
    M2<T> m = axis_elt;
    if (m.a + m.d < 0) m = {-m.a, -m.b, -m.c, -m.d};
    const T tr = m.a + m.d;
    const T disc = sqrt(tr * tr - 4);
    const T mu_plus = (tr + disc) / 2, mu_minus = (tr - disc) / 2;
    auto eigvec = [&](const T& mu) {
        BPoint<T> v1{m.b, mu - m.a}, v2{mu - m.d, m.c};
        T n1 = abs(v1.x) + abs(v1.y), n2 = abs(v2.x) + abs(v2.y);
        return n1 >= n2 ? v1 : v2;
    };
    BPoint<T> vp = eigvec(mu_plus), vm = eigvec(mu_minus);
    // columns: infinity -> attracting point, 0 -> repelling point
    M2<T> E{vp.x, vm.x, vp.y, vm.y};
    T det = E.a * E.d - E.b * E.c;
    if (det < 0) {
        E.b = -E.b;
        E.d = -E.d;
        det = -det;
    }
    const T s = sqrt(det);
    E = {E.a / s, E.b / s, E.c / s, E.d / s};
    M2<T> N = E.inverse();
    // image of i under N
    auto image_of_i = [](const M2<T>& q) {
        T den = q.c * q.c + q.d * q.d;
        return std::pair<T, T>{(q.a * q.c + q.b * q.d) / den, T(1) / den};
    };
    auto [ox, oy] = image_of_i(N);
    T r = sqrt(ox * ox + oy * oy);
    T sr = sqrt(r);
    N = M2<T>{T(1) / sr, T(0), T(0), sr} * N;
    auto [ox2, oy2] = image_of_i(N);
    Frame<T> f{N, {}, ox2, oy2, 2 * log(mu_plus)};
    M2<T> Ninv = N.inverse();
    for (const auto& l : letters) f.letters.push_back(N * l * Ninv);
    return f;
}

template <class T>
struct Tile {
    int parent = -1;
    Letter via = 0;
    M2<T> L;       // frame matrix with the centre's height divided out
    T log_h;       // log height of the centre
    T X;           // centre abscissa over height
    std::vector<int> perm;  // sheet i goes to perm[i] along the tile word
};

template <class T>
std::vector<Letter> tile_word(const std::vector<Tile<T>>& tiles, int idx) {
    std::vector<Letter> w;
    for (int i = idx; tiles[static_cast<std::size_t>(i)].parent >= 0; i = tiles[static_cast<std::size_t>(i)].parent)
        w.push_back(tiles[static_cast<std::size_t>(i)].via);
    std::reverse(w.begin(), w.end());
    return w;
}

template <class T>
Tile<T> step(const Frame<T>& f, const Tile<T>& t, int parent, Letter x, const std::vector<std::vector<int>>* lperm) {
    using std::log;
    using std::sqrt;
    M2<T> L = t.L * f.letters[x];
    // Moebius image of the centre (ox + i oy)
    T cr = L.c * f.ox + L.d, ci = L.c * f.oy;
    T den = cr * cr + ci * ci;
    T im = f.oy / den;
    T re = ((L.a * f.ox + L.b) * cr + L.a * L.c * f.oy * f.oy) / den;
    T s = sqrt(im);
    Tile<T> out;
    out.parent = parent;
    out.via = x;
    out.L = M2<T>{L.a / s, L.b / s, L.c * s, L.d * s};
    out.log_h = t.log_h + log(im);
    out.X = re / im;
    if (lperm) {
        const auto& px = (*lperm)[x];
        out.perm.resize(t.perm.size());
        for (std::size_t i = 0; i < t.perm.size(); ++i) out.perm[i] = px[static_cast<std::size_t>(t.perm[i])];
    }
    return out;
}

// cosh of the distance from a tile centre to the axis segment with log heights in [0, top]
template <class T>
T cosh_dist_to_segment(const Tile<T>& t, const T& top) {
    using std::log;
    using std::exp;
    T nearest = t.log_h + log(1 + t.X * t.X) / 2;
    if (nearest < 0) nearest = 0;
    if (nearest > top) nearest = top;
    T eta = exp(nearest - t.log_h);
    return 1 + (t.X * t.X + (1 - eta) * (1 - eta)) / (2 * eta);
}

template <class T>
T cosh_dist_to_point(const Tile<T>& t) {
    using std::exp;
    T h = exp(t.log_h);
    T x = h * t.X;
    return 1 + (x * x + (h - 1) * (h - 1)) / (2 * h);
}

template <class T>
struct TileSet {
    std::vector<Tile<T>> table;  // every tile built, parents index into this table
    std::vector<int> kept;       // tiles near the segment
};

template <class T>
Tile<T> root_tile(const Frame<T>& f, std::size_t degree) {
    using std::log;
    using std::sqrt;
    Tile<T> t;
    T s = sqrt(f.oy);
    t.L = M2<T>{T(1) / s, T(0), T(0), s};
    t.log_h = log(f.oy);
    t.X = f.ox / f.oy;
    t.perm.resize(degree);
    for (std::size_t i = 0; i < degree; ++i) t.perm[i] = static_cast<int>(i);
    return t;
}

// Tiles whose centres lie within `radius` of the frame axis between log
// heights 0 and `top`. The walk starts from the tile containing i.
template <class T>
TileSet<T> tiles_along(const Frame<T>& f, const T& top, double radius, const SubgroupFilter* filter) {
    using std::abs;
    using std::cosh;
    std::vector<std::vector<int>> lperm;
    if (filter) lperm = letter_perms(*filter);
    const auto* lp = filter ? &lperm : nullptr;
    const int nl = static_cast<int>(f.letters.size());
    const std::size_t degree = filter ? filter->gen_perms.front().size() : 0;

    TileSet<T> ts;
    ts.table.push_back(root_tile(f, degree));
    // Dirichlet walk: move to a neighbour whose centre is closer to i.
    for (int guard = 0; guard < 100000; ++guard) {
        const int cur = static_cast<int>(ts.table.size()) - 1;
        T best = cosh_dist_to_point(ts.table.back());
        int best_x = -1;
        for (int x = 0; x < nl; ++x) {
            T dn = cosh_dist_to_point(step(f, ts.table.back(), cur, static_cast<Letter>(x), lp));
            if (dn < best * (1 - T(1e-12))) {
                best = dn;
                best_x = x;
            }
        }
        if (best_x < 0) break;
        ts.table.push_back(step(f, ts.table.back(), cur, static_cast<Letter>(best_x), lp));
    }
    const int start = static_cast<int>(ts.table.size()) - 1;
    const T bound = cosh(T(radius));

    std::map<std::pair<long, long>, std::vector<int>> cells;
    auto cell_of = [](const Tile<T>& t) {
        return std::pair<long, long>{static_cast<long>(std::floor(static_cast<double>(t.X) * 4)),
                                     static_cast<long>(std::floor(static_cast<double>(t.log_h) * 4))};
    };
    // distinct centres are at least twice the inradius apart
    auto seen = [&](const Tile<T>& t) {
        auto [cx, cy] = cell_of(t);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = cells.find({cx + dx, cy + dy});
                if (it == cells.end()) continue;
                for (int idx : it->second) {
                    const auto& o = ts.table[static_cast<std::size_t>(idx)];
                    if (abs(o.X - t.X) < T(0.1) && abs(o.log_h - t.log_h) < T(0.1)) return true;
                }
            }
        return false;
    };
    ts.kept.push_back(start);
    cells[cell_of(ts.table[static_cast<std::size_t>(start)])].push_back(start);
    for (std::size_t q = 0; q < ts.kept.size(); ++q) {
        const int idx = ts.kept[q];
        for (int x = 0; x < nl; ++x) {
            Tile<T> nb = step(f, ts.table[static_cast<std::size_t>(idx)], idx, static_cast<Letter>(x), lp);
            if (cosh_dist_to_segment(nb, top) > bound) continue;
            if (seen(nb)) continue;
            ts.table.push_back(std::move(nb));
            const int ni = static_cast<int>(ts.table.size()) - 1;
            cells[cell_of(ts.table.back())].push_back(ni);
            ts.kept.push_back(ni);
        }
    }
    return ts;
}

struct CountResult {
    long count = 0;
    bool ambiguous = false;
};

template <class T>
struct Guards;
// `near`: boundary coordinate treated as touching the axis endpoints.
// `axis`: both endpoints this close make a lift a same-axis candidate, which
// the word problem then decides exactly.
// `same`/`close`: crossing keys that coincide or are too close to call. Keys of
// far lifts lose up to twelve digits in double and eighteen in quad over
// periods near 35, so these are looser than `near`.
template <>
struct Guards<double> {
    static double near(double tol) { return tol; }
    static double axis(double tol) { return tol * 1e5; }
    static double same(double tol) { return tol * 1e3; }
    static double close(double tol) { return tol * 1e7; }
};
template <>
struct Guards<Quad> {
    static Quad near(double) { return Quad("1e-25"); }
    static Quad axis(double) { return Quad("1e-15"); }
    static Quad same(double) { return Quad("1e-12"); }
    static Quad close(double) { return Quad("1e-9"); }
};

template <class T>
struct LocalLift {
    BPoint<T> p, q;
    int tile = -1;  // index of t' in the tile table
};

// Crossing lifts, deduplicated modulo translation by `period` along the axis.
template <class T>
class CrossingSet {
public:
    CrossingSet(T period, T same, T close) : period_(period), same_(same), close_(close) {}

    void add(T log_neg, T log_pos) {
        using std::floor;
        T mid = (log_neg + log_pos) / 2;
        T n = floor(mid / period_);
        Key k{log_neg - n * period_, log_pos - n * period_};
        for (const Key& o : keys_) {
            using std::abs;
            using std::round;
            T d1 = k.lo - o.lo;
            T shift = round(d1 / period_);
            T e1 = abs(d1 - shift * period_);
            T e2 = abs(k.hi - o.hi - shift * period_);
            if (e1 < close_ && e2 < close_) {
                if (e1 < same_ && e2 < same_) return;
                ambiguous_ = true;
                return;
            }
        }
        keys_.push_back(k);
    }
    long size() const { return static_cast<long>(keys_.size()); }
    bool ambiguous() const { return ambiguous_; }

private:
    struct Key {
        T lo, hi;
    };
    T period_, same_, close_;
    std::vector<Key> keys_;
    bool ambiguous_ = false;
};

struct AxisSpec {
    std::vector<Letter> word;  // the curve word whose axis is scanned
    int root_power = 1;        // word = root^root_power
};

template <class T>
struct ScanContext {
    std::vector<M2<T>> letters;
    Frame<T> frame;
    T root_len;
};

template <class T>
ScanContext<T> context_for(int genus, const AxisSpec& a) {
    auto letters = polygon_letters<T>(genus);
    Frame<T> f = make_frame(letters, eval(letters, a.word));
    T root_len = f.log_lambda / a.root_power;
    return {letters, f, root_len};
}

template <class T>
T psl_distance(const M2<T>& x, const M2<T>& y) {
    using std::abs;
    using std::min;
    T plus = abs(x.a - y.a) + abs(x.b - y.b) + abs(x.c - y.c) + abs(x.d - y.d);
    T minus = abs(x.a + y.a) + abs(x.b + y.b) + abs(x.c + y.c) + abs(x.d + y.d);
    return plus < minus ? plus : minus;
}

// Finds the group element translating the start tile by one root period; its
// word is returned when the local pictures agree.
template <class T>
std::optional<std::vector<Letter>> geometric_root(const TileSet<T>& ts, const T& root_len, const T& slack) {
    using std::abs;
    const auto& t0 = ts.table[static_cast<std::size_t>(ts.kept.front())];
    std::optional<std::vector<Letter>> found;
    for (int idx : ts.kept) {
        const auto& t = ts.table[static_cast<std::size_t>(idx)];
        if (abs(t.log_h - t0.log_h - root_len) > slack) continue;
        if (abs(t.X - t0.X) > slack) continue;
        T dev = psl_distance(t.L, t0.L);
        if (dev > slack) continue;
        auto w = tile_word(ts.table, idx);
        auto w0 = tile_word(ts.table, ts.kept.front());
        for (auto it = w0.rbegin(); it != w0.rend(); ++it) w.push_back(inverse(*it));
        found = w;
        break;
    }
    return found;
}

// Any element of the axis stabiliser translating by less than the root period
// means the supplied root is not primitive.
template <class T>
bool shorter_translation_exists(const TileSet<T>& ts, const T& root_len, const T& slack) {
    using std::abs;
    const auto& t0 = ts.table[static_cast<std::size_t>(ts.kept.front())];
    for (int idx : ts.kept) {
        const auto& t = ts.table[static_cast<std::size_t>(idx)];
        T off = t.log_h - t0.log_h;
        if (off <= slack || off >= root_len - slack) continue;
        if (abs(t.X - t0.X) > slack) continue;
        T dev = psl_distance(t.L, t0.L);
        if (dev < slack) return true;
    }
    return false;
}

struct SelfScan {
    CountResult crossings;
    std::vector<Letter> root_word;
};

template <class T>
SelfScan scan_self(const HyperbolicModel& model, const AxisSpec& axis, const SubgroupFilter* filter,
                   const std::function<int(const std::vector<Letter>&)>& cycle_len_of_root) {
    using std::cosh;
    using std::log;
    const SurfaceSig& sig = model.sig();
    ScanContext<T> ctx = context_for<T>(sig.genus(), axis);
    const T slack = T(1e-6);

    // First pass along one root period to recover the root element itself.
    TileSet<T> first = tiles_along(ctx.frame, ctx.root_len, model.tube_radius(), filter);
    if (shorter_translation_exists(first, ctx.root_len, slack))
        throw InternalDisagreement("axis stabiliser has a shorter translation than the extracted root");
    auto root = geometric_root(first, ctx.root_len, slack);
    if (!root) throw NumericInstability("could not locate the root translate of the start tile");
    Word root_word{sig, *root};
    if (!is_trivial(concat(power(root_word, axis.root_power), inverse(Word{sig, axis.word}))))
        throw InternalDisagreement("geometric root does not power to the curve word");

    const int m_root = filter ? cycle_len_of_root(*root) : 1;
    const T period = ctx.root_len * m_root;
    TileSet<T> along = m_root == 1 ? std::move(first) : tiles_along(ctx.frame, period, model.tube_radius(), filter);
    const T bound = cosh(T(model.tube_radius()));

    std::vector<LocalLift<T>> lifts;
    for (int idx : along.kept) {
        const auto& t = along.table[static_cast<std::size_t>(idx)];
        if (cosh_dist_to_segment(t, ctx.root_len) > bound) continue;
        const M2<T>& L = t.L;
        lifts.push_back({BPoint<T>{-L.b, L.a}, BPoint<T>{L.d, -L.c}, idx});
    }

    std::vector<char> in_orbit;
    std::vector<std::vector<int>> inv_perm;
    if (filter) {
        const std::size_t deg = filter->gen_perms.front().size();
        in_orbit.assign(deg, 0);
        int y = filter->base_point;
        SubgroupFilter f = *filter;
        for (int i = 0; i < m_root; ++i) {
            in_orbit[static_cast<std::size_t>(y)] = 1;
            f.base_point = y;
            y = f.act(y, root_word);
        }
        inv_perm.resize(along.table.size());
        for (const auto& l : lifts) {
            const auto& p = along.table[static_cast<std::size_t>(l.tile)].perm;
            auto& ip = inv_perm[static_cast<std::size_t>(l.tile)];
            ip.assign(p.size(), 0);
            for (std::size_t i = 0; i < p.size(); ++i) ip[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
        }
    }

    const T near = Guards<T>::near(model.tolerance());
    const T axis_near = Guards<T>::axis(model.tolerance());
    CrossingSet<T> crossings(period, Guards<T>::same(model.tolerance()), Guards<T>::close(model.tolerance()));
    bool ambiguous = false;
    using std::abs;
    for (int ti : along.kept) {
        const auto& t = along.table[static_cast<std::size_t>(ti)];
        for (const auto& lift : lifts) {
            if (filter) {
                int y = t.perm[static_cast<std::size_t>(filter->base_point)];
                y = inv_perm[static_cast<std::size_t>(lift.tile)][static_cast<std::size_t>(y)];
                if (!in_orbit[static_cast<std::size_t>(y)]) continue;
            }
            BPoint<T> p = apply(t.L, lift.p), q = apply(t.L, lift.q);
            const bool p0 = abs(p.x) < near, pinf = abs(p.y) < near;
            const bool q0 = abs(q.x) < near, qinf = abs(q.y) < near;
            const bool on_axis = (abs(p.x) < axis_near && abs(q.y) < axis_near) ||
                                 (abs(p.y) < axis_near && abs(q.x) < axis_near);
            if (on_axis) {
                // possibly the axis itself: decide exactly with the word problem
                const auto& tp = along.table[static_cast<std::size_t>(lift.tile)];
                auto w = tile_word(along.table, ti);
                auto wp = tile_word(along.table, lift.tile);
                for (auto it = wp.rbegin(); it != wp.rend(); ++it) w.push_back(inverse(*it));
                const double jd = static_cast<double>((t.log_h - tp.log_h) / ctx.root_len);
                bool same_axis = false;
                for (long j = std::lround(jd) - 1; j <= std::lround(jd) + 1 && !same_axis; ++j)
                    same_axis = is_trivial(concat(Word{sig, w}, power(root_word, static_cast<int>(-j))));
                if (same_axis) continue;
                if ((p0 && qinf) || (pinf && q0)) {
                    ambiguous = true;
                    continue;
                }
            }
            if (p0 || pinf || q0 || qinf) {
                ambiguous = true;
                continue;
            }
            const bool p_neg = (p.x < 0) != (p.y < 0);
            const bool q_neg = (q.x < 0) != (q.y < 0);
            if (p_neg == q_neg) continue;
            T lp = t.log_h + log(abs(p.x)) - log(abs(p.y));
            T lq = t.log_h + log(abs(q.x)) - log(abs(q.y));
            if (p_neg)
                crossings.add(lp, lq);
            else
                crossings.add(lq, lp);
        }
    }
    SelfScan out;
    out.crossings = {crossings.size(), ambiguous || crossings.ambiguous()};
    out.root_word = *root;
    return out;
}

template <class T>
CountResult scan_pair(const HyperbolicModel& model, const AxisSpec& alpha, const AxisSpec& beta) {
    using std::cosh;
    using std::log;
    using std::abs;
    const int genus = model.sig().genus();
    ScanContext<T> ca = context_for<T>(genus, alpha);
    ScanContext<T> cb = context_for<T>(genus, beta);
    const T slack = T(1e-6);
    TileSet<T> ta = tiles_along(ca.frame, ca.root_len, model.tube_radius(), nullptr);
    TileSet<T> tb = tiles_along(cb.frame, cb.root_len, model.tube_radius(), nullptr);
    if (shorter_translation_exists(ta, ca.root_len, slack) || shorter_translation_exists(tb, cb.root_len, slack))
        throw InternalDisagreement("axis stabiliser has a shorter translation than the extracted root");

    // beta frame to alpha frame
    const M2<T> B2A = ca.frame.N * cb.frame.N.inverse();
    std::vector<LocalLift<T>> lifts;
    for (int idx : tb.kept) {
        const M2<T>& L = tb.table[static_cast<std::size_t>(idx)].L;
        lifts.push_back({apply(B2A, BPoint<T>{-L.b, L.a}), apply(B2A, BPoint<T>{L.d, -L.c}), idx});
    }
    const T near = Guards<T>::near(model.tolerance());
    CrossingSet<T> crossings(ca.root_len, Guards<T>::same(model.tolerance()), Guards<T>::close(model.tolerance()));
    bool ambiguous = false;
    for (int ti : ta.kept) {
        const auto& t = ta.table[static_cast<std::size_t>(ti)];
        for (const auto& lift : lifts) {
            BPoint<T> p = apply(t.L, lift.p), q = apply(t.L, lift.q);
            const bool bad = abs(p.x) < near || abs(p.y) < near || abs(q.x) < near || abs(q.y) < near;
            if (bad) {
                ambiguous = true;
                continue;
            }
            const bool p_neg = (p.x < 0) != (p.y < 0);
            const bool q_neg = (q.x < 0) != (q.y < 0);
            if (p_neg == q_neg) continue;
            T lp = t.log_h + log(abs(p.x)) - log(abs(p.y));
            T lq = t.log_h + log(abs(q.x)) - log(abs(q.y));
            if (p_neg)
                crossings.add(lp, lq);
            else
                crossings.add(lq, lp);
        }
    }
    return {crossings.size(), ambiguous || crossings.ambiguous()};
}

}  // namespace

int SubgroupFilter::act(int sheet, const Word& w) const {
    for (Letter x : w.letters) {
        const auto& p = gen_perms[static_cast<std::size_t>(generator_of(x))];
        if (!is_inverse_letter(x)) {
            sheet = p[static_cast<std::size_t>(sheet)];
        } else {
            sheet = static_cast<int>(std::find(p.begin(), p.end(), sheet) - p.begin());
        }
    }
    return sheet;
}

HyperbolicModel::HyperbolicModel(const SurfaceSig& sig, double tolerance, double enum_radius_margin)
    : sig_(sig), tolerance_(tolerance), margin_(enum_radius_margin) {
    if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
    if (!(enum_radius_margin > 0)) throw DomainError("enumeration radius margin must be positive");
    const double n = sig.num_letters();
    inradius_ = std::acosh(1 / std::tan(std::numbers::pi / n));
    circumradius_ = std::acosh(1 / (std::tan(std::numbers::pi / n) * std::tan(std::numbers::pi / n)));
    for (const auto& m : polygon_letters<double>(sig.genus())) letters_.push_back({m.a, m.b, m.c, m.d});
}

HyperbolicModel HyperbolicModel::with_margin(double margin) const {
    HyperbolicModel m(sig_, tolerance_, margin);
    m.high_precision_ = high_precision_;
    return m;
}

HyperbolicModel HyperbolicModel::with_high_precision(bool on) const {
    HyperbolicModel m = *this;
    m.high_precision_ = on;
    return m;
}

Mat2 HyperbolicModel::evaluate(const Word& w) const {
    Mat2 m;
    for (Letter x : w.letters) m = m * letters_[x];
    return m;
}

long double HyperbolicModel::evaluate_trace_long(const Word& w) const {
    auto letters = polygon_letters<long double>(sig_.genus());
    auto m = eval(letters, w.letters);
    return m.a + m.d;
}

HyperbolicModel fuchsian_generators(const SurfaceSig& sig, double tolerance, double enum_radius_margin) {
    HyperbolicModel m(sig, tolerance, enum_radius_margin);
    if (relator_residual(m) > tolerance) throw InternalDisagreement("polygon side pairings do not satisfy the relator");
    for (int x = 0; x < sig.num_letters(); ++x)
        if (std::abs(m.letter_matrix(static_cast<Letter>(x)).trace()) <= 2)
            throw InternalDisagreement("side pairing is not hyperbolic");
    return m;
}

double relator_residual(const HyperbolicModel& model) {
    Mat2 r = model.evaluate(relator_word(model.sig()));
    const double s = r.a > 0 ? 1.0 : -1.0;
    return std::max({std::abs(r.a - s), std::abs(r.b), std::abs(r.c), std::abs(r.d - s)});
}

GeodesicInfo geodesic_length(const HyperbolicModel& model, const CurveClass& c) {
    if (c.trivial()) throw TrivialClass("the identity has no geodesic");
    const double tr = std::abs(model.evaluate(c.word).trace());
    return {c, 2 * std::acosh(tr / 2), tr};
}

double collar_width(double length) {
    if (!(length > 0)) throw DomainError("collar width needs a positive length");
    return 2 * std::asinh(1 / std::sinh(length / 2));
}

namespace {

int cycle_length(const SubgroupFilter& f, const Word& w) {
    int y = f.act(f.base_point, w);
    int m = 1;
    while (y != f.base_point) {
        y = f.act(y, w);
        ++m;
    }
    return m;
}

void validate_filter(const SurfaceSig& sig, const SubgroupFilter& f) {
    if (static_cast<int>(f.gen_perms.size()) != sig.num_generators())
        throw DomainError("subgroup filter needs one permutation per generator");
    const std::size_t d = f.gen_perms.front().size();
    for (const auto& p : f.gen_perms)
        if (p.size() != d) throw DomainError("subgroup filter permutations differ in degree");
    if (f.base_point < 0 || static_cast<std::size_t>(f.base_point) >= d)
        throw DomainError("subgroup filter base point out of range");
}

// Runs a scan in double precision, repeating it in quad precision when a
// decision fell within the guard band; a close call in quad is an error.
template <class F>
long with_precision_fallback(const HyperbolicModel& model, F&& scan) {
    CountResult lo;
    if (!model.always_high_precision()) {
        lo = scan(double{});
        if (!lo.ambiguous) return lo.count;
    }
    CountResult hi = scan(Quad{});
    if (hi.ambiguous) throw NumericInstability("near-tangent axes persist at quad precision");
    return hi.count;
}

}  // namespace

long self_intersection(const HyperbolicModel& model, const CurveClass& c, const std::optional<SubgroupFilter>& filter) {
    if (c.trivial()) throw TrivialClass("self-intersection of the identity");
    const SurfaceSig& sig = model.sig();
    if (filter) validate_filter(sig, *filter);
    const RootDecomposition rd = primitive_root(c);
    const AxisSpec axis{c.word.letters, rd.exponent};
    const SubgroupFilter* fp = filter ? &*filter : nullptr;

    std::vector<Letter> root_word;
    auto root_cycle = [&](const std::vector<Letter>& w) { return cycle_length(*fp, Word{sig, w}); };
    const long crossings = with_precision_fallback(model, [&](auto tag) {
        using T = decltype(tag);
        SelfScan s = scan_self<T>(model, axis, fp, root_cycle);
        root_word = s.root_word;
        // crossings come in pairs; an odd double-precision count is a missed close call
        if constexpr (std::is_same_v<T, double>) s.crossings.ambiguous |= s.crossings.count % 2 != 0;
        return s.crossings;
    });
    if (crossings % 2 != 0) throw InternalDisagreement("odd number of crossing lifts");
    const long prim = crossings / 2;

    long k = rd.exponent;
    if (fp) {
        const Word root{sig, root_word};
        const int m_curve = cycle_length(*fp, c.word);
        const int m_root = cycle_length(*fp, root);
        const long total = static_cast<long>(rd.exponent) * m_curve;
        if (total % m_root != 0) throw InternalDisagreement("elevation power is not a multiple of the root period");
        k = total / m_root;
    }
    return k * k * prim + k - 1;
}

long intersection(const HyperbolicModel& model, const CurveClass& c1, const CurveClass& c2) {
    if (c1.trivial() || c2.trivial()) throw TrivialClass("intersection with the identity");
    const RootDecomposition r1 = primitive_root(c1), r2 = primitive_root(c2);
    if (r1.root.word == r2.root.word) {
        // parallel powers of one curve meet only at its own double points
        return 2L * r1.exponent * r2.exponent * self_intersection(model, r1.root);
    }
    const AxisSpec a{c1.word.letters, r1.exponent}, b{c2.word.letters, r2.exponent};
    const long prim = with_precision_fallback(model, [&](auto tag) {
        using T = decltype(tag);
        return scan_pair<T>(model, a, b);
    });
    return static_cast<long>(r1.exponent) * r2.exponent * prim;
}

}  // namespace surfcov
