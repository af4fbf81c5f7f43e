#include "surfcov/covers.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace surfcov {

namespace {

using Perm = std::vector<int>;

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

// Right action: apply x, then y.
Perm compose(const Perm& x, const Perm& y) {
    Perm out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[static_cast<std::size_t>(x[i])];
    return out;
}

Perm invert(const Perm& x) {
    Perm out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
    return out;
}

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

bool transitive(const std::vector<Perm>& gens, int degree) {
    std::vector<char> seen(static_cast<std::size_t>(degree), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    std::vector<Perm> both = gens;
    for (const Perm& g : gens) both.push_back(invert(g));
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (const Perm& g : both) {
            {
                const int j = g[static_cast<std::size_t>(i)];
                if (seen[static_cast<std::size_t>(j)]) continue;
                seen[static_cast<std::size_t>(j)] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count == degree;
}

std::string generator_name(int g) { return letter_name(make_letter(g, false)); }

// Finite permutation group with element lookup; elements[0] is the identity.
class FiniteGroup {
public:
    // Elements are found breadth-first from the identity; each records the
    // element and generator it was reached from, which gives the product
    // table as x * y = (x * parent(y)) * gen(y).
    FiniteGroup(std::size_t n, const std::vector<Perm>& gens) {
        add(identity_perm(n), -1, -1);
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            std::vector<int> row;
            for (std::size_t g = 0; g < gens.size(); ++g)
                row.push_back(add(compose(elements_[i], gens[g]), static_cast<int>(i), static_cast<int>(g)));
            right_.push_back(std::move(row));
        }
        const std::size_t order = elements_.size();
        table_.assign(order * order, 0);
        inverse_.assign(order, 0);
        for (std::size_t x = 0; x < order; ++x) {
            table_[x * order] = static_cast<int>(x);
            for (std::size_t y = 1; y < order; ++y) {
                const int via = table_[x * order + static_cast<std::size_t>(parent_[y])];
                table_[x * order + y] = right_[static_cast<std::size_t>(via)][static_cast<std::size_t>(gen_[y])];
            }
            for (std::size_t y = 0; y < order; ++y)
                if (table_[x * order + y] == 0) inverse_[x] = static_cast<int>(y);
        }
    }

    const std::vector<Perm>& elements() const { return elements_; }
    int mul(int x, int y) const {
        return table_[static_cast<std::size_t>(x) * elements_.size() + static_cast<std::size_t>(y)];
    }
    int inv(int x) const { return inverse_[static_cast<std::size_t>(x)]; }

    // Subgroup generated by the given elements, as sorted indices.
    std::vector<int> closure(const std::vector<int>& gens) const {
        std::vector<char> in(elements_.size(), 0);
        std::vector<int> members{0};
        in[0] = 1;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int g : gens) {
                int y = mul(members[i], g);
                if (!in[static_cast<std::size_t>(y)]) {
                    in[static_cast<std::size_t>(y)] = 1;
                    members.push_back(y);
                }
            }
        std::sort(members.begin(), members.end());
        return members;
    }

private:
    int add(Perm p, int parent, int gen) {
        if (const auto it = lookup_.find(p); it != lookup_.end()) return it->second;
        const int id = static_cast<int>(elements_.size());
        lookup_.emplace(p, id);
        elements_.push_back(std::move(p));
        parent_.push_back(parent);
        gen_.push_back(gen);
        return id;
    }

    std::vector<Perm> elements_;
    std::unordered_map<Perm, int, PermHash> lookup_;
    std::vector<int> parent_, gen_;
    std::vector<std::vector<int>> right_;
    std::vector<int> table_, inverse_;
};

}  // namespace

int PermCover::act(int sheet, const Word& w) const {
    for (Letter x : w.letters) {
        const Perm& p = gen_perms[static_cast<std::size_t>(generator_of(x))];
        if (is_inverse_letter(x))
            sheet = static_cast<int>(std::find(p.begin(), p.end(), sheet) - p.begin());
        else
            sheet = p[static_cast<std::size_t>(sheet)];
    }
    return sheet;
}

std::vector<int> PermCover::word_perm(const Word& w) const {
    std::vector<Perm> inv;
    inv.reserve(gen_perms.size());
    for (const Perm& p : gen_perms) inv.push_back(invert(p));
    Perm out = identity_perm(static_cast<std::size_t>(degree));
    for (Letter x : w.letters) {
        const std::size_t g = static_cast<std::size_t>(generator_of(x));
        out = compose(out, is_inverse_letter(x) ? inv[g] : gen_perms[g]);
    }
    return out;
}

PermCover validate_cover(const RawCover& raw) {
    const SurfaceSig sig(raw.genus);
    if (raw.degree < 1) throw BadPermutation("degree must be at least 1");
    if (static_cast<int>(raw.perms.size()) != sig.num_generators())
        throw BadPermutation("expected " + std::to_string(sig.num_generators()) + " permutations");
    PermCover cover{sig, raw.degree, {}};
    for (std::size_t g = 0; g < raw.perms.size(); ++g) {
        const auto& images = raw.perms[g];
        if (static_cast<int>(images.size()) != raw.degree)
            throw BadPermutation(generator_name(static_cast<int>(g)) + " has the wrong number of images");
        Perm p(images.size());
        std::vector<char> hit(images.size(), 0);
        for (std::size_t i = 0; i < images.size(); ++i) {
            const int y = images[i] - 1;
            if (y < 0 || y >= raw.degree || hit[static_cast<std::size_t>(y)])
                throw BadPermutation(generator_name(static_cast<int>(g)) + " is not a permutation of 1.." +
                                     std::to_string(raw.degree));
            hit[static_cast<std::size_t>(y)] = 1;
            p[i] = y;
        }
        cover.gen_perms.push_back(std::move(p));
    }
    if (cover.word_perm(relator_word(sig)) != identity_perm(static_cast<std::size_t>(raw.degree)))
        throw RelatorNotKilled("the surface relator acts nontrivially on sheets");
    if (!transitive(cover.gen_perms, raw.degree)) throw NotTransitive("the sheets form more than one orbit");
    return cover;
}

PermCover parse_cover_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(std::string("cover file is not valid JSON: ") + e.what());
    }
    try {
        RawCover raw;
        raw.genus = j.at("genus").get<int>();
        raw.degree = j.at("degree").get<int>();
        const SurfaceSig sig(raw.genus);
        const auto& perms = j.at("perms");
        if (!perms.is_object()) throw SyntaxError("\"perms\" must be an object");
        for (const auto& [key, value] : perms.items()) {
            bool known = false;
            for (int g = 0; g < sig.num_generators(); ++g) known = known || key == generator_name(g);
            if (!known) throw UnknownGenerator("unknown generator \"" + key + "\" in perms");
        }
        for (int g = 0; g < sig.num_generators(); ++g) {
            const std::string name = generator_name(g);
            if (!perms.contains(name)) throw BadPermutation("missing permutation for " + name);
            raw.perms.push_back(perms.at(name).get<std::vector<int>>());
        }
        return validate_cover(raw);
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("malformed cover: ") + e.what());
    }
}

PermCover load_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open cover file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cover_json(ss.str());
}

std::string cover_to_json(const PermCover& cover) {
    nlohmann::ordered_json j;
    j["genus"] = cover.sig.genus();
    j["degree"] = cover.degree;
    nlohmann::ordered_json perms = nlohmann::ordered_json::object();
    for (std::size_t g = 0; g < cover.gen_perms.size(); ++g) {
        std::vector<int> images;
        for (int y : cover.gen_perms[g]) images.push_back(y + 1);
        perms[generator_name(static_cast<int>(g))] = images;
    }
    j["perms"] = perms;
    return j.dump();
}

PermCover trivial_cover(const SurfaceSig& sig) {
    return {sig, 1, std::vector<Perm>(static_cast<std::size_t>(sig.num_generators()), Perm{0})};
}

PermCover relabel(const PermCover& cover, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != cover.degree) throw BadPermutation("relabeling has the wrong size");
    PermCover out = cover;
    for (std::size_t g = 0; g < cover.gen_perms.size(); ++g)
        for (std::size_t i = 0; i < sigma.size(); ++i)
            out.gen_perms[g][static_cast<std::size_t>(sigma[i])] = sigma[static_cast<std::size_t>(cover.gen_perms[g][i])];
    return out;
}

std::vector<PermCover> enumerate_covers(const SurfaceSig& sig, int degree) {
    if (degree < 1) throw DomainError("degree must be at least 1");
    std::vector<Perm> all;
    Perm p = identity_perm(static_cast<std::size_t>(degree));
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int ng = sig.num_generators();
    double tuples = 1;
    for (int g = 0; g < ng; ++g) tuples *= static_cast<double>(all.size());
    if (tuples > 1e7) throw BudgetTooLarge("too many permutation tuples to enumerate");

    std::vector<PermCover> out;
    const Perm id = identity_perm(static_cast<std::size_t>(degree));
    const Word rel = relator_word(sig);
    std::vector<std::size_t> choice(static_cast<std::size_t>(ng), 0);
    while (true) {
        PermCover c{sig, degree, {}};
        for (std::size_t i : choice) c.gen_perms.push_back(all[i]);
        if (c.word_perm(rel) == id && transitive(c.gen_perms, degree)) out.push_back(std::move(c));
        int pos = ng - 1;
        while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == all.size()) choice[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

std::vector<int> elevation_degrees(const PermCover& cover, const CurveClass& c) {
    const Perm p = cover.word_perm(c.word);
    std::vector<char> seen(p.size(), 0);
    std::vector<int> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ElevationReport::any_simple() const {
    return std::any_of(entries.begin(), entries.end(), [](const ElevationEntry& e) { return e.simple; });
}

ElevationReport elevation_report(const HyperbolicModel& model, const PermCover& cover, const CurveClass& c) {
    if (c.trivial()) throw TrivialClass("elevations of the identity");
    if (!(model.sig() == cover.sig)) throw DomainError("model and cover are over different surfaces");
    const Perm p = cover.word_perm(c.word);
    std::vector<char> seen(p.size(), 0);
    ElevationReport report;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        const long si = self_intersection(model, c, cover.filter(static_cast<int>(i)));
        report.entries.push_back({len, static_cast<int>(i), si == 0, si});
    }
    return report;
}

bool has_simple_elevation(const HyperbolicModel& model, const PermCover& cover, const CurveClass& c,
                          ElevationReport* report) {
    ElevationReport r = elevation_report(model, cover, c);
    const bool simple = r.any_simple();
    if (report) *report = std::move(r);
    return simple;
}

bool GaloisDiamond::join_criterion() const {
    return std::any_of(H.begin(), H.end(), [&](const std::vector<int>& h) { return h == B; });
}

GaloisDiamond galois_diamond(const PermCover& p, const PermCover& q) {
    if (!(p.sig == q.sig)) throw DomainError("covers are over different surfaces");
    GaloisDiamond d;
    const int dq = q.degree;
    std::vector<int> slot(static_cast<std::size_t>(p.degree * dq), -1);
    d.orbit.push_back({0, 0});
    slot[0] = 0;
    for (std::size_t i = 0; i < d.orbit.size(); ++i)
        for (std::size_t g = 0; g < p.gen_perms.size(); ++g) {
            const auto [x, y] = d.orbit[i];
            const int nx = p.gen_perms[g][static_cast<std::size_t>(x)], ny = q.gen_perms[g][static_cast<std::size_t>(y)];
            int& s = slot[static_cast<std::size_t>(nx * dq + ny)];
            if (s < 0) {
                s = static_cast<int>(d.orbit.size());
                d.orbit.push_back({nx, ny});
            }
        }
    std::vector<Perm> gens;
    for (std::size_t g = 0; g < p.gen_perms.size(); ++g) {
        Perm img(d.orbit.size());
        for (std::size_t i = 0; i < d.orbit.size(); ++i) {
            const auto [x, y] = d.orbit[i];
            img[i] = slot[static_cast<std::size_t>(p.gen_perms[g][static_cast<std::size_t>(x)] * dq +
                                                   q.gen_perms[g][static_cast<std::size_t>(y)])];
        }
        gens.push_back(std::move(img));
    }
    const FiniteGroup G(d.orbit.size(), gens);
    d.elements = G.elements();
    for (std::size_t e = 0; e < d.elements.size(); ++e) {
        const auto [x, y] = d.orbit[static_cast<std::size_t>(d.elements[e][0])];
        if (x == 0) d.A.push_back(static_cast<int>(e));
        if (y == 0) d.B.push_back(static_cast<int>(e));
    }
    std::vector<char> covered(d.elements.size(), 0);
    for (std::size_t e = 0; e < d.elements.size(); ++e) {
        if (covered[e]) continue;
        const int t = static_cast<int>(e);
        d.transversal.push_back(t);
        for (int a : d.A) covered[static_cast<std::size_t>(G.mul(t, a))] = 1;
        const int ti = G.inv(t);
        std::vector<int> gen;
        for (int a : d.A) gen.push_back(G.mul(G.mul(t, a), ti));
        gen.insert(gen.end(), d.B.begin(), d.B.end());
        d.H.push_back(G.closure(gen));
    }
    return d;
}

namespace {

// Whether some sheet bijection sigma with sigma(0) = t intertwines the actions.
bool intertwines_from(const PermCover& p, const PermCover& q, int t) {
    const std::size_t n = static_cast<std::size_t>(p.degree);
    std::vector<int> sigma(n, -1), preimage(n, -1);
    sigma[0] = t;
    preimage[static_cast<std::size_t>(t)] = 0;
    std::vector<int> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const int i = queue[k];
        for (std::size_t g = 0; g < p.gen_perms.size(); ++g) {
            const int j = p.gen_perms[g][static_cast<std::size_t>(i)];
            const int img = q.gen_perms[g][static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
            int& sj = sigma[static_cast<std::size_t>(j)];
            if (sj < 0) {
                if (preimage[static_cast<std::size_t>(img)] >= 0) return false;
                sj = img;
                preimage[static_cast<std::size_t>(img)] = j;
                queue.push_back(j);
            } else if (sj != img) {
                return false;
            }
        }
    }
    // transitivity of p put every sheet in the queue
    return true;
}

}  // namespace

bool action_equivalent(const PermCover& p, const PermCover& q) {
    if (!(p.sig == q.sig) || p.degree != q.degree) return false;
    for (int t = 0; t < p.degree; ++t)
        if (intertwines_from(p, q, t)) return true;
    return false;
}

bool isomorphic_covers(const PermCover& p, const PermCover& q) {
    const GaloisDiamond d = galois_diamond(p, q);
    const bool by_diamond = p.degree == q.degree && d.join_criterion();
    const bool by_action = action_equivalent(p, q);
    if (by_diamond != by_action)
        throw InternalDisagreement("diamond criterion and action equivalence disagree");
    return by_action;
}

bool is_regular(const PermCover& cover) {
    for (int t = 1; t < cover.degree; ++t)
        if (!intertwines_from(cover, cover, t)) return false;
    return true;
}

}  // namespace surfcov
