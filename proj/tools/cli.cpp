#include "cli.hpp"

#include <gmpxx.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>

#include "surfcov/census.hpp"
#include "surfcov/constants.hpp"
#include "surfcov/covers.hpp"
#include "surfcov/distinguisher.hpp"
#include "surfcov/errors.hpp"
#include "surfcov/hyperbolic.hpp"
#include "surfcov/logscalar.hpp"
#include "surfcov/trace_spectra.hpp"
#include "surfcov/words.hpp"

namespace surfcov::cli {
namespace {

using Json = nlohmann::ordered_json;

// Exact rationals travel as strings ("-3/4", "12"); integers that fit in 64 bits as numbers.
Json rational(const mpq_class& q) { return q.get_str(); }

Json integer(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Json log_scalar(const LogScalar& v) {
    Json j;
    if (v.log2_is_finite()) {
        j["log2"] = v.log2_value();
    } else {
        j["log2"] = Json{{"iterated_exp2", v.level() - 1}, {"of", v.top()}};
    }
    if (v.exact()) j["exact"] = rational(*v.exact());
    return j;
}

// "3/2", "-7", "0.125" or "1e-3" style input, read exactly.
mpq_class parse_rational(const std::string& text) {
    const auto bad = [&] { return SyntaxError("not a rational number: \"" + text + "\""); };
    if (text.empty()) throw bad();
    if (text.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw bad();
        q.canonicalize();
        return q;
    }
    std::string mant = text;
    long exp10 = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
        mant = text.substr(0, e);
        try {
            std::size_t used = 0;
            exp10 = std::stol(text.substr(e + 1), &used);
            if (used != text.size() - e - 1) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    std::string digits;
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '-' || mant[i] == '+')) neg = mant[i++] == '-';
    bool seen_point = false, seen_digit = false;
    for (; i < mant.size(); ++i) {
        const char c = mant[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) --exp10;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();
    mpq_class q{mpz_class(digits, 10)};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) q /= scale;
    else q *= scale;
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

mpz_class parse_integer(const std::string& text) {
    mpz_class z;
    if (text.empty() || z.set_str(text, 10) != 0) throw SyntaxError("not an integer: \"" + text + "\"");
    return z;
}

Json bound_check(const BoundCheck& b) {
    return Json{{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", to_string(b.holds)}};
}

Json elevations(const ElevationReport& r) {
    Json a = Json::array();
    for (const auto& e : r.entries)
        a.push_back(Json{{"cycle_length", e.cycle_length},
                         {"base_sheet", e.base_sheet + 1},
                         {"simple", e.simple},
                         {"self_intersection", e.self_intersection}});
    return a;
}

Json cover_summary(const PermCover& c) {
    return Json{{"genus", c.sig.genus()}, {"degree", c.degree}, {"regular", is_regular(c)}};
}

// Flattens a JSON value into "path = value" lines.
void write_text(const Json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) write_text(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out << path << " = []\n";
        for (std::size_t i = 0; i < j.size(); ++i) write_text(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

struct Options {
    std::string precision = "standard";
    std::string output = "json";
    int jobs = 1;

    // covers, distinguish, spectra
    std::string file_p, file_q;
    int max_len = 4;
    // selfint
    std::string word, cover_file;
    int genus = 2;
    // constants
    long chi = 2, degp = 2, degq = 2, C = 938;
    bool no_pi_variant = false;
    std::string tang_g = "2", tang_orderG = "1";
    long tang_pn = 0;
    // census
    long census_N = 1, census_k = 1, xmax = 2000;
    std::string L = "4", lE = "1";
    bool floored = false;
    // spectra
    int N = 2, samples = 100, maxlen = 6;
    std::uint64_t seed = 7;
    std::string field = "complex";
};

HyperbolicModel make_model(const SurfaceSig& sig, const Options& o) {
    return fuchsian_generators(sig).with_high_precision(o.precision == "high");
}

Json covers_check(const Options& o) {
    const PermCover c = load_cover_file(o.file_p);
    Json j{{"valid", true}};
    j.update(cover_summary(c));
    return j;
}

Json covers_iso(const Options& o) {
    const PermCover p = load_cover_file(o.file_p);
    const PermCover q = load_cover_file(o.file_q);
    Json j{{"isomorphic", isomorphic_covers(p, q)}, {"action_equivalent", action_equivalent(p, q)}};
    if (p.sig == q.sig && p.degree == q.degree) {
        const GaloisDiamond d = galois_diamond(p, q);
        j["join_criterion"] = d.join_criterion();
        j["order_G"] = d.order();
    } else {
        j["join_criterion"] = false;
    }
    j["p"] = cover_summary(p);
    j["q"] = cover_summary(q);
    return j;
}

Json distinguish(const Options& o) {
    const PermCover p = load_cover_file(o.file_p);
    const PermCover q = load_cover_file(o.file_q);
    if (!(p.sig == q.sig)) throw DomainError("covers are over different surfaces");
    const HyperbolicModel model = make_model(p.sig, o);
    const WitnessReport r = find_witness(model, p, q, o.max_len);
    Json j{{"verdict", to_string(r.verdict)}, {"max_len", o.max_len}};
    if (r.witness) {
        j["witness"] = to_string(*r.witness);
        j["witness_self_intersection"] = *r.witness_self_intersection;
        j["verified"] = verify_witness(model, p, q, *r.witness);
        j["elevations_p"] = elevations(r.elevations_p);
        j["elevations_q"] = elevations(r.elevations_q);
    } else {
        j["witness"] = nullptr;
    }
    j["budget_used"] = r.budget_used;
    j["simple_along_p"] = r.simple_along_p;
    j["simple_along_q"] = r.simple_along_q;
    return j;
}

Json selfint(const Options& o) {
    std::optional<PermCover> cover;
    if (!o.cover_file.empty()) cover = load_cover_file(o.cover_file);
    const SurfaceSig sig = cover ? cover->sig : SurfaceSig(o.genus);
    const CurveClass c = dehn_reduce(parse_word(o.word, sig));
    if (c.trivial()) throw TrivialClass("word \"" + o.word + "\" is null-homotopic");
    const HyperbolicModel model = make_model(sig, o);
    const GeodesicInfo g = geodesic_length(model, c);
    Json j{{"class", to_string(c)},
           {"genus", sig.genus()},
           {"length", g.length},
           {"self_intersection", self_intersection(model, c)}};
    if (cover) {
        const ElevationReport r = elevation_report(model, *cover, c);
        j["cover"] = cover_summary(*cover);
        j["elevations"] = elevations(r);
        j["any_simple"] = r.any_simple();
    }
    return j;
}

Json rivin_values(const RivinValues& v) {
    return Json{{"c1", log_scalar(v.c1)}, {"c2", log_scalar(v.c2)}, {"L0", log_scalar(v.L0)}, {"source", v.source}};
}

Json bowditch(const BowditchChain& b) {
    return Json{{"D_bow", b.D_bow},
                {"K_bow", b.K_bow},
                {"delta", b.delta},
                {"geodesic_gap", b.geodesic_gap},
                {"lambda_to_geodesic", integer(b.lambda_to_geodesic)}};
}

Json tang(const TangBound& t) {
    return Json{{"bowditch", bowditch(t.chain)},
                {"W0", rational(t.W0)},
                {"short_intersection", integer(t.short_intersection)},
                {"polynomial_part", log_scalar(t.polynomial_part)},
                {"log_term", log_scalar(t.log_term)},
                {"hempel_fallback", t.hempel_fallback},
                {"total", log_scalar(t.total)}};
}

Json constants_pipeline(const Options& o) {
    PipelineConfig cfg;
    cfg.C = o.C;
    cfg.pi_variant = !o.no_pi_variant;
    const ConstantsReport r = pipeline_M(o.chi, o.degp, o.degq, cfg);
    Json j{{"chi_abs", r.chi_abs},
           {"deg_p", r.deg_p},
           {"deg_q", r.deg_q},
           {"d", r.d},
           {"covers_necessarily_isomorphic", r.covers_necessarily_isomorphic},
           {"C", r.C_bgi},
           {"E", r.E},
           {"pi_variant", r.pi_variant}};
    j["bowditch"] = bowditch(r.bowditch);
    if (!r.covers_necessarily_isomorphic) {
        j["core_index_bound"] = log_scalar(r.core_index_bound);
        j["d2_factorial"] = log_scalar(r.d2_factorial);
        j["tang"] = tang(r.tang);
        j["rivin"] = Json{{"provider", r.rivin.provider},
                          {"ell_E", r.rivin.ell_E},
                          {"S", rivin_values(r.rivin.S)},
                          {"X", rivin_values(r.rivin.X)},
                          {"Y", rivin_values(r.rivin.Y)},
                          {"W_max", rivin_values(r.rivin.W_max)},
                          {"X_top", rivin_values(r.rivin.X_top)}};
        const std::pair<const char*, const LogScalar*> fields[] = {
            {"D_tang", &r.D_tang}, {"K1", &r.K1}, {"K2", &r.K2}, {"K3", &r.K3}, {"N_threshold", &r.N_threshold},
            {"L1", &r.L1},         {"L2", &r.L2}, {"M1", &r.M1}, {"M2", &r.M2}, {"M", &r.M}};
        for (const auto& [name, v] : fields) j[name] = log_scalar(*v);
    }
    Json trace = Json::array();
    for (const auto& s : r.trace)
        trace.push_back(Json{{"name", s.name},
                             {"claim", s.claim},
                             {"formula", s.formula},
                             {"value", log_scalar(s.value)},
                             {"note", s.note}});
    j["trace"] = std::move(trace);
    return j;
}

Json constants_tang(const Options& o) {
    const mpz_class g = parse_integer(o.tang_g);
    const mpz_class order = parse_integer(o.tang_orderG);
    Json j{{"g", integer(g)}, {"pn", o.tang_pn}, {"orderG", integer(order)}};
    j.update(tang(tang_circumcenter_bound(g, o.tang_pn, order)));
    return j;
}

Json census_count_cmd(const Options& o) { return Json{{"count", census_count(o.census_N, o.census_k)}}; }

Json census_A(const Options& o) {
    const mpq_class L = parse_rational(o.L), lE = parse_rational(o.lE);
    const mpq_class A = A_of_L(L, lE, !o.floored);
    return Json{{"L", rational(L)}, {"lE", rational(lE)}, {"A", rational(A)}, {"A_approx", A.get_d()}};
}

Json census_verify_c1(const Options& o) {
    const C1ScanReport r = c1_threshold_scan(parse_rational(o.lE), o.xmax);
    return Json{{"ell_E", rational(r.ell_E)},
                {"x_max", r.x_max},
                {"x_star", r.x_star},
                {"x_star_within_30", r.x_star_within_30},
                {"undecided", r.undecided},
                {"A_at_30", rational(r.A_at_30)},
                {"c1L2_at_30", r.c1L2_at_30},
                {"holds_at_30", r.holds_at_30},
                {"intermediate_at_30", bound_check(r.intermediate_at_30)}};
}

Json spectra_compare(const Options& o) {
    const PermCover p = load_cover_file(o.file_p);
    const PermCover q = load_cover_file(o.file_q);
    const Field field = o.field == "real" ? Field::Real : Field::Complex;
    const GenericReport r = distinguish_generic(make_model(p.sig, o), p, q, o.N, o.samples, o.maxlen, o.seed, field,
                                                o.jobs);
    Json j;
    j["fraction_differ"] = r.fraction_differ ? Json(*r.fraction_differ) : Json(nullptr);
    j["N"] = r.N;
    j["field"] = to_string(r.field);
    j["samples"] = r.samples;
    j["maxlen"] = r.budget;
    j["seed"] = r.seed;
    j["elevations_p"] = r.elevations_p;
    j["elevations_q"] = r.elevations_q;
    Json per = Json::array();
    for (const auto& s : r.per_seed) per.push_back(Json{{"seed", s.seed}, {"differ", s.differ}});
    j["per_seed"] = std::move(per);
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::function<Json(const Options&)> action;

    CLI::App app{"Finite covers of closed surfaces: isomorphism, distinguishing curves and effective constants",
                 "surfcov"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--precision", o.precision, "Intersection counting precision")
        ->check(CLI::IsMember({"standard", "high"}));
    app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", o.jobs, "Worker threads for sampling commands")->check(CLI::PositiveNumber);

    auto* covers = app.add_subcommand("covers", "Cover files")->require_subcommand(1);
    auto* check = covers->add_subcommand("check", "Validate a cover file");
    check->add_option("file", o.file_p)->required();
    check->callback([&] { action = covers_check; });
    auto* iso = covers->add_subcommand("iso", "Decide isomorphism of two covers");
    iso->add_option("p", o.file_p)->required();
    iso->add_option("q", o.file_q)->required();
    iso->callback([&] { action = covers_iso; });

    auto* dist = app.add_subcommand("distinguish", "Search for a curve with a simple elevation in one cover only");
    dist->add_option("p", o.file_p)->required();
    dist->add_option("q", o.file_q)->required();
    dist->add_option("--max-len", o.max_len, "Word length budget")->check(CLI::Range(1, 12));
    dist->callback([&] { action = distinguish; });

    auto* si = app.add_subcommand("selfint", "Self-intersection number of a curve, optionally with its elevations");
    si->add_option("word", o.word)->required();
    si->add_option("--cover", o.cover_file, "Cover file");
    si->add_option("--genus", o.genus, "Genus when no cover is given")->check(CLI::Range(2, 64));
    si->callback([&] { action = selfint; });

    auto* constants = app.add_subcommand("constants", "Effective constants")->require_subcommand(1);
    auto* pipe = constants->add_subcommand("pipeline", "Length bound M with its derivation trace");
    pipe->add_option("--chi", o.chi, "|chi| of the base surface")->required();
    pipe->add_option("--degp", o.degp, "Degree of p")->required();
    pipe->add_option("--degq", o.degq, "Degree of q")->required();
    pipe->add_option("--C", o.C, "Intersection constant");
    pipe->add_flag("--no-pi-variant", o.no_pi_variant, "Drop the pi factor from K1");
    pipe->callback([&] { action = constants_pipeline; });
    auto* tg = constants->add_subcommand("tang", "Circumcenter distance bound");
    tg->add_option("--g", o.tang_g, "Genus")->required();
    tg->add_option("--pn", o.tang_pn, "Punctures")->required();
    tg->add_option("--orderG", o.tang_orderG, "Order of the group")->required();
    tg->callback([&] { action = constants_tang; });

    auto* census = app.add_subcommand("census", "Curves on the four-holed sphere")->require_subcommand(1);
    auto* count = census->add_subcommand("count", "Number of twists p/2k with |p/2k| < N");
    count->add_option("--N", o.census_N)->required();
    count->add_option("--k", o.census_k)->required();
    count->callback([&] { action = census_count_cmd; });
    auto* a = census->add_subcommand("A", "Lower count A(L)");
    a->add_option("--L", o.L, "Length, rational")->required();
    a->add_option("--lE", o.lE, "Length of E, rational");
    a->add_flag("--floored", o.floored, "Allow L that is not a multiple of 4 lE");
    a->callback([&] { action = census_A; });
    auto* c1 = census->add_subcommand("verify-c1", "Certify the quadratic lower bound on [x_star, xmax]");
    c1->add_option("--xmax", o.xmax)->required()->check(CLI::Range(1L, 1000000L));
    c1->add_option("--lE", o.lE, "Length of E, rational");
    c1->callback([&] { action = census_verify_c1; });

    auto* spectra = app.add_subcommand("spectra", "Simple trace spectra")->require_subcommand(1);
    auto* cmp = spectra->add_subcommand("compare", "Fraction of sampled representations whose spectra differ");
    cmp->add_option("p", o.file_p)->required();
    cmp->add_option("q", o.file_q)->required();
    cmp->add_option("--N", o.N)->check(CLI::Range(2, 16));
    cmp->add_option("--samples", o.samples)->check(CLI::NonNegativeNumber);
    cmp->add_option("--maxlen", o.maxlen)->check(CLI::Range(1, 10));
    cmp->add_option("--seed", o.seed);
    cmp->add_option("--field", o.field)->check(CLI::IsMember({"real", "complex"}));
    cmp->callback([&] { action = spectra_compare; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "surfcov: " << e.what() << "\n";
        return 2;
    }

    try {
        const Json result = action(o);
        if (o.output == "text") write_text(result, "", out);
        else out << result.dump(2) << "\n";
        return 0;
    } catch (const NumericInstability& e) {
        err << "surfcov: " << e.what() << "\n";
        return 3;
    } catch (const InternalDisagreement& e) {
        err << "surfcov: " << e.what() << "\n";
        return 1;
    } catch (const SamplingFailed& e) {
        err << "surfcov: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "surfcov: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "surfcov: internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace surfcov::cli
