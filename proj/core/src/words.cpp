#include "surfcov/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace surfcov {

SurfaceSig::SurfaceSig(int genus) : genus_(genus) {
    if (genus < 2) throw InvalidGenus("genus must be at least 2, got " + std::to_string(genus));
    if (genus > 63) throw InvalidGenus("genus above 63 is not representable");
}

namespace {

using Seq = std::vector<Letter>;

Seq inverse_seq(const Seq& s) {
    Seq out(s.rbegin(), s.rend());
    for (auto& x : out) x = inverse(x);
    return out;
}

Seq free_reduce_seq(const Seq& s) {
    Seq out;
    out.reserve(s.size());
    for (Letter x : s) {
        if (!out.empty() && out.back() == inverse(x))
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

void cyclic_reduce(Seq& s) {
    s = free_reduce_seq(s);
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo] == inverse(s[hi - 1])) {
        ++lo;
        --hi;
    }
    s = Seq(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
}

Seq min_rotation(const Seq& s) {
    const std::size_t n = s.size();
    if (n == 0) return s;
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            Letter x = s[(r + i) % n], y = s[(best + i) % n];
            if (x != y) {
                if (x < y) best = r;
                break;
            }
        }
    }
    Seq out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s[(best + i) % n];
    return out;
}

Seq class_key(const Seq& s, bool oriented) {
    Seq a = min_rotation(s);
    if (oriented) return a;
    Seq b = min_rotation(inverse_seq(s));
    return std::min(a, b);
}

Seq relator_seq(int g) {
    Seq r;
    for (int k = 0; k < g; ++k) {
        r.push_back(static_cast<Letter>(4 * k + 0));
        r.push_back(static_cast<Letter>(4 * k + 2));
        r.push_back(static_cast<Letter>(4 * k + 1));
        r.push_back(static_cast<Letter>(4 * k + 3));
    }
    return r;
}

// Every letter starts exactly one rotation of R and one of R^-1.
class RelatorTable {
public:
    explicit RelatorTable(int g) : g_(g), by_first_(static_cast<std::size_t>(4 * g)) {
        Seq r = relator_seq(g);
        for (const Seq& base : {r, inverse_seq(r)}) {
            const std::size_t n = base.size();
            for (std::size_t s = 0; s < n; ++s) {
                Seq rot(n);
                for (std::size_t i = 0; i < n; ++i) rot[i] = base[(s + i) % n];
                by_first_[rot[0]].push_back(std::move(rot));
            }
        }
    }
    int genus() const { return g_; }
    const std::vector<Seq>& starting_with(Letter x) const { return by_first_[x]; }

private:
    int g_;
    std::vector<std::vector<Seq>> by_first_;
};

const RelatorTable& table_for(int g) {
    static std::vector<std::unique_ptr<RelatorTable>> cache(64);
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<std::size_t>(g)];
    if (!slot) slot = std::make_unique<RelatorTable>(g);
    return *slot;
}

struct Match {
    std::size_t pos = 0;
    const Seq* rel = nullptr;
    std::size_t k = 0;
};

// Maximal matches of length >= lo between cyclic subwords of s and relator rotations.
template <class F>
void for_each_match(const Seq& s, const RelatorTable& t, std::size_t lo, F&& f) {
    const std::size_t n = s.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (const Seq& rel : t.starting_with(s[p])) {
            const std::size_t cap = std::min(n, rel.size());
            std::size_t k = 0;
            while (k < cap && s[(p + k) % n] == rel[k]) ++k;
            if (k >= lo) {
                if (f(Match{p, &rel, k})) return;
            }
        }
    }
}

Seq replace(const Seq& s, const Match& m) {
    const std::size_t n = s.size();
    const Seq& rel = *m.rel;
    Seq out;
    out.reserve(n - m.k + rel.size() - m.k);
    for (std::size_t i = rel.size(); i-- > m.k;) out.push_back(inverse(rel[i]));
    for (std::size_t i = m.k; i < n; ++i) out.push_back(s[(m.pos + i) % n]);
    cyclic_reduce(out);
    return out;
}

Seq dehn_cyclic(Seq s, const RelatorTable& t) {
    cyclic_reduce(s);
    const std::size_t half = static_cast<std::size_t>(2 * t.genus());
    for (;;) {
        bool changed = false;
        for_each_match(s, t, half + 1, [&](const Match& m) {
            s = replace(s, m);
            changed = true;
            return true;
        });
        if (!changed) return s;
    }
}

// All minimal cyclic representatives reachable by half-relator swaps, as
// rotation-minimal sequences. Shortenings found on the way restart the search.
std::set<Seq> geodesic_family(Seq s, const RelatorTable& t) {
    const std::size_t half = static_cast<std::size_t>(2 * t.genus());
restart:
    s = dehn_cyclic(std::move(s), t);
    std::set<Seq> seen;
    if (s.empty()) return seen;
    std::deque<Seq> queue;
    seen.insert(min_rotation(s));
    queue.push_back(min_rotation(s));
    while (!queue.empty()) {
        Seq cur = std::move(queue.front());
        queue.pop_front();
        Seq shorter;
        bool found_shorter = false;
        for_each_match(cur, t, half, [&](const Match& m) {
            Seq next = dehn_cyclic(replace(cur, m), t);
            if (next.size() < cur.size()) {
                shorter = std::move(next);
                found_shorter = true;
                return true;
            }
            Seq key = min_rotation(next);
            if (seen.insert(key).second) queue.push_back(std::move(key));
            return false;
        });
        if (found_shorter) {
            s = std::move(shorter);
            goto restart;
        }
    }
    return seen;
}

Seq canonical_seq(const std::set<Seq>& family, bool oriented) {
    Seq best;
    bool first = true;
    for (const Seq& w : family) {
        Seq key = class_key(w, oriented);
        if (first || key < best) {
            best = std::move(key);
            first = false;
        }
    }
    return best;
}

std::size_t smallest_period(const Seq& s) {
    const std::size_t n = s.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = s[i] == s[i - d];
        if (ok) return d;
    }
    return n;
}

}  // namespace

bool operator<(const CurveClass& x, const CurveClass& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    if (x.word.letters != y.word.letters) return x.word.letters < y.word.letters;
    return x.oriented < y.oriented;
}

std::string letter_name(Letter x) {
    const int gen = generator_of(x);
    const int k = gen / 2 + 1;
    const bool is_b = (gen % 2) != 0;
    char c = is_b ? 'b' : 'a';
    if (is_inverse_letter(x)) c = static_cast<char>(std::toupper(c));
    return std::string(1, c) + std::to_string(k);
}

Word parse_word(std::string_view text, const SurfaceSig& sig) {
    Seq out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        const char head = tok[0];
        if (head != 'a' && head != 'b' && head != 'A' && head != 'B')
            throw SyntaxError("token '" + tok + "' does not start with a, b, A or B");
        const auto caret = tok.find('^');
        const std::string idx_part = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        if (idx_part.empty() || !std::all_of(idx_part.begin(), idx_part.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw SyntaxError("token '" + tok + "' lacks a generator index");
        long idx = 0;
        auto [p, ec] = std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), idx);
        if (ec != std::errc() || p != idx_part.data() + idx_part.size())
            throw SyntaxError("bad generator index in '" + tok + "'");
        if (idx < 1 || idx > sig.genus())
            throw UnknownGenerator("generator '" + tok + "' outside genus " + std::to_string(sig.genus()));
        long exponent = 1;
        if (caret != std::string::npos) {
            const std::string e = tok.substr(caret + 1);
            auto [q, ec2] = std::from_chars(e.data(), e.data() + e.size(), exponent);
            if (e.empty() || ec2 != std::errc() || q != e.data() + e.size())
                throw SyntaxError("bad exponent in '" + tok + "'");
        }
        const int gen = 2 * static_cast<int>(idx - 1) + ((head == 'b' || head == 'B') ? 1 : 0);
        bool inv = std::isupper(static_cast<unsigned char>(head)) != 0;
        if (exponent < 0) {
            inv = !inv;
            exponent = -exponent;
        }
        if (exponent > 1'000'000) throw SyntaxError("exponent too large in '" + tok + "'");
        for (long i = 0; i < exponent; ++i) out.push_back(make_letter(gen, inv));
    }
    return Word{sig, free_reduce_seq(out)};
}

std::string to_string(const Word& w) {
    std::string s;
    for (Letter x : w.letters) {
        if (!s.empty()) s += ' ';
        s += letter_name(x);
    }
    return s;
}

std::string to_string(const CurveClass& c) { return to_string(c.word); }

Word relator_word(const SurfaceSig& sig) { return Word{sig, relator_seq(sig.genus())}; }

Word inverse(const Word& w) { return Word{w.sig, inverse_seq(w.letters)}; }

Word concat(const Word& x, const Word& y) {
    Seq s = x.letters;
    s.insert(s.end(), y.letters.begin(), y.letters.end());
    return Word{x.sig, free_reduce_seq(s)};
}

Word power(const Word& w, int k) {
    const Seq base = k < 0 ? inverse_seq(w.letters) : w.letters;
    Seq s;
    for (int i = 0; i < std::abs(k); ++i) s.insert(s.end(), base.begin(), base.end());
    return Word{w.sig, free_reduce_seq(s)};
}

Word free_reduce(const Word& w) { return Word{w.sig, free_reduce_seq(w.letters)}; }

CurveClass dehn_reduce(const Word& w, bool oriented) {
    const RelatorTable& t = table_for(w.sig.genus());
    auto family = geodesic_family(w.letters, t);
    return CurveClass{Word{w.sig, canonical_seq(family, oriented)}, oriented};
}

Word dehn_reduce_linear(const Word& w) {
    const RelatorTable& t = table_for(w.sig.genus());
    const std::size_t half = static_cast<std::size_t>(2 * t.genus());
    Seq s = free_reduce_seq(w.letters);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = 0; p < s.size() && !changed; ++p) {
            for (const Seq& rel : t.starting_with(s[p])) {
                std::size_t k = 0;
                while (k < rel.size() && p + k < s.size() && s[p + k] == rel[k]) ++k;
                if (k <= half) continue;
                Seq next(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(p));
                for (std::size_t i = rel.size(); i-- > k;) next.push_back(inverse(rel[i]));
                next.insert(next.end(), s.begin() + static_cast<std::ptrdiff_t>(p + k), s.end());
                s = free_reduce_seq(next);
                changed = true;
                break;
            }
        }
    }
    return Word{w.sig, s};
}

bool is_trivial(const Word& w) {
    return dehn_cyclic(w.letters, table_for(w.sig.genus())).empty();
}

std::vector<long> abelianize(const Word& w) {
    std::vector<long> v(static_cast<std::size_t>(w.sig.num_generators()), 0);
    for (Letter x : w.letters) v[static_cast<std::size_t>(generator_of(x))] += is_inverse_letter(x) ? -1 : 1;
    return v;
}

RootDecomposition primitive_root(const CurveClass& c) {
    if (c.trivial()) throw TrivialClass("the identity has no primitive root");
    const RelatorTable& t = table_for(c.word.sig.genus());
    auto family = geodesic_family(c.word.letters, t);
    std::size_t best = c.word.size();
    const Seq* best_word = nullptr;
    for (const Seq& w : family) {
        std::size_t d = smallest_period(w);
        if (d < best) {
            best = d;
            best_word = &w;
        }
    }
    if (!best_word) return {c, 1};
    Seq root(best_word->begin(), best_word->begin() + static_cast<std::ptrdiff_t>(best));
    return {dehn_reduce(Word{c.word.sig, root}, c.oriented), static_cast<int>(c.word.size() / best)};
}

std::vector<CurveClass> enumerate_classes(const SurfaceSig& sig, int max_len, std::size_t cap) {
    if (max_len < 0) throw DomainError("max_len must be nonnegative");
    const RelatorTable& t = table_for(sig.genus());
    const int nl = sig.num_letters();
    std::vector<CurveClass> out;
    Seq w;
    // Depth-first over cyclically reduced words whose first letter is minimal
    // among all letters and their inverses; survivors are kept when they are
    // their own canonical form.
    auto visit = [&](auto&& self, int len) -> void {
        if (static_cast<int>(w.size()) == len) {
            if (w.back() == inverse(w.front())) return;
            if (class_key(w, false) != w) return;
            auto family = geodesic_family(w, t);
            if (family.empty() || family.begin()->size() != w.size()) return;
            if (canonical_seq(family, false) != w) return;
            if (out.size() >= cap)
                throw BudgetTooLarge("class enumeration exceeded cap of " + std::to_string(cap));
            out.push_back(CurveClass{Word{sig, w}, false});
            return;
        }
        for (int x = 0; x < nl; ++x) {
            const Letter l = static_cast<Letter>(x);
            if (w.empty()) {
                if (is_inverse_letter(l)) continue;
            } else {
                if (l == inverse(w.back())) continue;
                if (l < w.front() || inverse(l) < w.front()) continue;
            }
            w.push_back(l);
            self(self, len);
            w.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) visit(visit, len);
    return out;
}

}  // namespace surfcov
