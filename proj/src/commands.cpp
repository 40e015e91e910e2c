#include "commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>

#include "json_internal.hpp"
#include "tamer/appendix.hpp"
#include "tamer/derived.hpp"
#include "tamer/error.hpp"
#include "tamer/finite_group.hpp"
#include "tamer/kummer.hpp"
#include "tamer/parabolic.hpp"

#ifndef TAMER_VERSION
#define TAMER_VERSION "0.0.0"
#endif

namespace tamer::detail {

namespace {

struct Request {
    Json raw;
    std::string format = "json";
    std::uint64_t seed = 1;

    bool has(const char* key) const { return raw.contains(key) && !raw.at(key).is_null(); }
    std::uint64_t number(const char* key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const auto& v = raw.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw InputError(std::string("\"") + key + "\" must be a nonnegative integer");
        return v.get<std::uint64_t>();
    }
    std::string text(const char* key) const {
        if (!has(key)) throw InputError(std::string("this command needs --") + key);
        if (!raw.at(key).is_string()) throw InputError(std::string("\"") + key + "\" must be a string");
        return raw.at(key).get<std::string>();
    }
};

Json header(const std::string& command, const Request& req, const std::string& hashed) {
    Json j;
    j["command"] = command;
    j["version"] = TAMER_VERSION;
    j["model_hash"] = sha256_hex(hashed);
    j["seed"] = req.seed;
    return j;
}

Json vec_json(const std::vector<long>& v) { return Json(v); }

// ---------------------------------------------------------------------------
// abelianize

std::uint64_t forced_characteristic(const GroupSchemeDescriptor& d) {
    return std::visit(
        [](const auto& n) -> std::uint64_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AlphaDesc>) return n.p;
            if constexpr (std::is_same_v<T, ProductDesc>) {
                auto a = forced_characteristic(*n.a);
                return a ? a : forced_characteristic(*n.b);
            }
            if constexpr (std::is_same_v<T, SemidirectDesc>) {
                auto a = forced_characteristic(*n.normal);
                return a ? a : forced_characteristic(*n.quotient);
            }
            return 0;
        },
        d.node);
}

std::uint64_t positive_int(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) throw InputError(std::string(what) + " must be a positive integer");
    return j.get<std::uint64_t>();
}

Json hopf_json(const HopfAlgebra& H) {
    Json j;
    j["p"] = H.field().characteristic();
    j["field_degree"] = H.field().degree();
    j["dim"] = H.dim();
    j["labels"] = H.labels();
    j["mult"] = H.mult();
    j["unit"] = H.unit();
    j["comult"] = H.comult();
    j["counit"] = H.counit();
    j["antipode"] = H.antipode();
    return j;
}

HopfAlgebra hopf_from(const Json& j) {
    for (const char* k : {"p", "labels", "mult", "unit", "comult", "counit", "antipode"})
        if (!j.contains(k)) throw InputError(std::string("a Hopf algebra needs \"") + k + "\"");
    if (j.value("field_degree", 1u) != 1u) throw InputError("Hopf algebra input is limited to prime fields");
    const auto p = positive_int(j.at("p"), "p");
    if (!is_prime(p) || p > 65521) throw InputError("p must be a prime below 65536");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    const std::size_t n = labels.size();
    if (n == 0 || n > kMaxChainDim) throw InputError("Hopf algebra dimension must lie in 1..64");
    auto coeffs = [&](const char* key, std::size_t size) {
        auto v = j.at(key).get<std::vector<std::uint32_t>>();
        if (v.size() != size) throw InputError(std::string("\"") + key + "\" has the wrong length");
        for (auto c : v)
            if (c >= p) throw InputError(std::string("\"") + key + "\" has a coefficient outside [0, p)");
        return v;
    };
    return HopfAlgebra(FiniteField(p), labels, coeffs("mult", n * n * n), coeffs("unit", n), coeffs("comult", n * n * n),
                       coeffs("counit", n), coeffs("antipode", n * n));
}

GroupSchemeDescriptor group_from(const Json& j) {
    if (j.is_string()) return constant(j.get<std::string>());
    if (!j.is_object() || j.size() != 1) throw InputError("a group is a string or an object with one key");
    const auto& [key, v] = *j.items().begin();
    if (key == "constant") {
        if (!v.is_string()) throw InputError("\"constant\" takes a bundled group name");
        return constant(v.get<std::string>());
    }
    if (key == "mu") return mu(positive_int(v, "mu order"));
    if (key == "alpha") return alpha(positive_int(v, "alpha p"));
    if (key == "alpha_semidirect_mu") return alpha_semidirect_mu(positive_int(v, "p"));
    if (key == "mu_semidirect_z2") return mu_semidirect_z2(positive_int(v, "n"));
    if (key == "product") {
        if (!v.is_array() || v.size() != 2) throw InputError("\"product\" takes two groups");
        return product(group_from(v[0]), group_from(v[1]));
    }
    if (key == "semidirect") {
        if (!v.is_object() || !v.contains("normal") || !v.contains("quotient"))
            throw InputError("\"semidirect\" needs \"normal\" and \"quotient\"");
        ActionDesc act;
        if (v.contains("action")) {
            const auto& a = v.at("action");
            const std::string kind = a.is_string() ? a.get<std::string>() : a.value("kind", std::string("trivial"));
            if (kind == "trivial") act.kind = ActionDesc::Kind::Trivial;
            else if (kind == "exponents") act.kind = ActionDesc::Kind::Exponents;
            else if (kind == "scalars") act.kind = ActionDesc::Kind::Scalars;
            else if (kind == "weight") act.kind = ActionDesc::Kind::Weight;
            else throw InputError("unknown action kind \"" + kind + "\"");
            if (a.is_object() && a.contains("values")) act.values = a.at("values").get<std::vector<std::int64_t>>();
            if (a.is_object() && a.contains("weight")) act.weight = a.at("weight").get<std::int64_t>();
        }
        return semidirect(group_from(v.at("normal")), group_from(v.at("quotient")), act);
    }
    throw InputError("unknown group constructor \"" + key + "\"");
}

// ---------------------------------------------------------------------------

Json monomial_json(const Monomial& m, std::size_t from) {
    return Json(std::vector<std::uint32_t>(m.begin() + static_cast<std::ptrdiff_t>(from), m.end()));
}

std::vector<std::uint32_t> index_list(const Json& j, const char* what) {
    std::vector<std::uint32_t> out;
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
    for (const auto& v : j) {
        auto x = positive_int(v, what);
        if (x > 4096) throw InputError(std::string(what) + " entries must be at most 4096");
        out.push_back(static_cast<std::uint32_t>(x));
    }
    return out;
}

using Handler = int (*)(const Request&, const Settings&, Json&);

int cmd_abelianize(const Request& req, const Settings& st, Json& out) {
    const auto text = req.text("group");
    auto gj = parse_json(text, "group");
    std::optional<GroupSchemeDescriptor> desc;
    std::optional<HopfAlgebra> given;
    std::uint64_t p = 0;
    if (gj.is_object() && gj.contains("hopf")) {
        given = hopf_from(gj.at("hopf"));
        p = given->field().characteristic();
        if (req.has("p") && req.number("p", 0) != p) throw InputError("--p disagrees with the Hopf algebra field");
    } else {
        desc = group_from(gj);
        const auto forced = forced_characteristic(*desc);
        p = req.number("p", forced ? forced : 2);
        if (!is_prime(p)) throw InputError("--p must be prime");
    }
    const std::size_t order = desc ? desc->order() : given->dim();
    if (order > st.budget_dim)
        throw BudgetExceeded("dim", "group scheme of order " + std::to_string(order) + " exceeds the dim budget " +
                                        std::to_string(st.budget_dim));
    const HopfAlgebra H = desc ? build(*desc, FiniteField(p)) : *given;
    auto axioms = check_axioms(H);
    if (given && !axioms.all_pass()) throw InputError("input is not a Hopf algebra: " + axioms.failures());
    auto D = derived_subgroup(H);
    auto ab = abelianization(H);

    out = header("abelianize", req, gj.dump() + "|p=" + std::to_string(p));
    out["group"] = desc ? desc->describe() : std::string("given Hopf algebra");
    out["p"] = p;
    out["dim"] = H.dim();
    out["hopf_axioms"] = axioms.all_pass();
    out["cocommutative"] = is_abelian(H);
    out["derived_subgroup"] = {{"ideal_dim", D.ideal.dim()},
                               {"order", D.quotient.algebra.dim()},
                               {"chain_dims", D.chain_dims},
                               {"stabilization_index", D.stabilization_index}};
    const bool ab_axioms = check_axioms(ab.algebra).all_pass();
    out["abelianization"] = {{"dim", ab.algebra.dim()},
                             {"cocommutative", is_abelian(ab.algebra)},
                             {"hopf_axioms", ab_axioms},
                             {"hopf_algebra", hopf_json(ab.algebra)}};
    bool ok = axioms.all_pass() && ab_axioms && ab.algebra.dim() * D.quotient.algebra.dim() == H.dim();
    if (const auto* c = desc ? std::get_if<ConstantDesc>(&desc->node) : nullptr) {
        const auto& G = *c->group;
        const auto comm = G.commutator_subgroup().size();
        const auto quotient = G.order() / comm;
        out["table_oracle"] = {{"order", G.order()},
                               {"commutator_subgroup_order", comm},
                               {"abelianization_order", quotient},
                               {"agrees", quotient == ab.algebra.dim()}};
        ok = ok && quotient == ab.algebra.dim();
    }
    out["pass"] = ok;
    return ok ? 0 : 1;
}

int cmd_kummer(const Request& req, const Settings& st, Json& out) {
    const auto text = req.text("model");
    auto j = parse_json(text, "kummer");
    if (!j.is_object() || !j.contains("r")) throw InputError("kummer input needs \"r\"");
    auto r = index_list(j.at("r"), "r");
    const std::uint64_t p = j.contains("p") ? positive_int(j.at("p"), "p") : req.number("p", 5);
    if (!is_prime(p)) throw InputError("p must be prime");
    if (r.empty()) throw InputError("kummer input needs at least one index");
    std::uint64_t rank = 1;
    for (auto x : r) {
        rank *= x;
        if (rank > st.budget_torsion) throw BudgetExceeded("torsion", "Kummer algebra rank exceeds the budget");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < r.size(); ++i) names.push_back("u" + std::to_string(i + 1));
    auto base = make_ring(p, names);
    std::vector<MultiPoly> s;
    for (std::size_t i = 0; i < r.size(); ++i) s.push_back(MultiPoly::variable(base, i));
    auto Z = kummer_algebra(base, s, r);
    auto cert = etale_certificate(Z);

    out = header("kummer", req, j.dump());
    out["p"] = p;
    out["r"] = r;
    out["rank"] = Z.rank();
    Json basis = Json::array();
    if (Z.rank() <= 4096)
        for (const auto& m : Z.basis()) basis.push_back(monomial_json(m, base->nvars()));
    out["basis_degrees"] = basis;
    Json rel = Json::array();
    for (std::size_t i = 0; i < r.size(); ++i)
        rel.push_back("t" + std::to_string(i + 1) + "^" + std::to_string(r[i]) + " = " + s[i].to_string());
    out["relations"] = rel;
    out["etale_certificate"] = {{"jacobian_determinant", cert.determinant.to_string()},
                                {"det_times_t", cert.determinant_times_t.to_string()},
                                {"expected", cert.expected.to_string()},
                                {"identity_holds", cert.identity_holds},
                                {"etale", cert.etale}};
    bool ok = cert.identity_holds && cert.etale;
    if (!cert.etale) out["detail"] = "p divides the product of the r_i, so the chart is not etale over the complement";
    if (j.contains("group")) {
        std::vector<std::uint64_t> orders;
        for (const auto& v : j.at("group")) orders.push_back(positive_int(v, "group order"));
        FiniteAbelianGroup A(orders);
        if (A.size() > st.budget_torsion) throw BudgetExceeded("torsion", "cover group exceeds the budget");
        if (!j.contains("phi")) throw InputError("an induced cover needs \"phi\"");
        auto phi = j.at("phi").get<CharacterMatrix>();
        auto cover = induced_cover(Z, A, phi);
        const auto triples = cover.check_cocycle(20000, req.seed);
        const bool refines = refines_grading(cover, Z);
        out["induced_cover"] = {{"group", orders},
                                {"rank", cover.rank()},
                                {"presentation", cover.presentation()},
                                {"cocycle_triples", triples},
                                {"refines_grading", refines},
                                {"free_away_from_branch_locus", cover.free_away_from_branch_locus()}};
        ok = ok && refines;
    }
    out["pass"] = ok;
    return ok ? 0 : 1;
}

int cmd_parabolic(const Request& req, const Settings&, Json& out) {
    const auto text = req.text("model");
    auto j = parse_json(text, "parabolic");
    if (!j.is_object()) throw InputError("parabolic input must be an object");
    ParabolicSite site;
    site.r = index_list(j.value("r", Json::array()), "r");
    for (const auto& d : j.value("degrees", Json::array())) site.divisor_degree.push_back(d.get<long>());
    if (site.divisor_degree.empty()) site.divisor_degree.assign(site.r.size(), 1);
    if (j.contains("points")) site.points = j.at("points").get<std::vector<std::vector<std::size_t>>>();
    else
        for (std::size_t i = 0; i < site.r.size(); ++i) site.points.push_back({i});
    auto module = module_from(j);
    auto b = parabolic_of(site, module);

    out = header("parabolic", req, j.dump());
    Json pieces = Json::array();
    for (const auto& pc : b.pieces()) pieces.push_back({{"e0", pc.e0}, {"w", pc.w}});
    out["pieces"] = pieces;
    Json weights = Json::array();
    for (std::size_t x = 0; x < site.points.size(); ++x) weights.push_back(weights_at(b, x));
    out["weights"] = weights;
    // degrees and jump checks over one fundamental domain
    std::uint64_t levels = 1;
    for (auto r : site.r) levels *= r;
    if (levels > 100000) throw BudgetExceeded("torsion", "fundamental domain too large");
    std::uint64_t jumps = 0, periodic = 0;
    bool ok = true;
    Json degrees = Json::array();
    for (std::uint64_t k = 0; k < levels; ++k) {
        std::vector<long> l(site.r.size());
        auto x = k;
        for (std::size_t i = 0; i < l.size(); ++i) {
            l[i] = static_cast<long>(x % site.r[i]);
            x /= site.r[i];
        }
        if (k < 64) degrees.push_back({{"l", l}, {"degree", b.degree(l)}});
        for (std::size_t pt = 0; pt < site.points.size(); ++pt) {
            try {
                jump_length_check(b, l, pt);
                ++jumps;
            } catch (const AssertionFailure&) {
                ok = false;
            }
        }
        for (std::size_t i = 0; i < l.size(); ++i) {
            auto sh = l;
            sh[i] += site.r[i];
            const bool good = b.degree(sh) == b.degree(l) - static_cast<long>(b.rank()) * site.divisor_degree[i];
            ok = ok && good;
            periodic += good ? 1 : 0;
        }
    }
    out["degrees"] = degrees;
    out["jump_checks"] = jumps;
    out["pseudo_periodicity_checks"] = periodic;
    out["pass"] = ok;
    return ok ? 0 : 1;
}

RootStackModel model_of(const Request& req, Json& parsed) {
    parsed = parse_json(req.text("model"), "model");
    auto m = model_from(parsed);
    if (req.has("p")) m.p = req.number("p", 0);
    m.validate();
    return m;
}

Json witness_json(const WeightWitness& w) {
    return {{"point", w.point}, {"l", w.l}, {"class", w.coords}, {"order", w.order}};
}

int cmd_weights(const Request& req, const Settings& st, Json& out) {
    Json parsed;
    auto m = model_of(req, parsed);
    PicRootStack pic(m);
    auto v = weights_side(m, st.budget_torsion);
    out = header("weights", req, model_to_json(m));
    out["pic"] = pic.structure();
    out["torsion_order"] = v.torsion_order;
    out["exists"] = v.exists;
    Json ws = Json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
    out["witnesses"] = ws;
    if (!v.exists) {
        out["certificate"] = v.certificate;
        out["point"] = *v.failing_point;
        out["missing"] = v.missing;
    }
    return 0;
}

int cmd_decide(const Request& req, const Settings& st, Json& out) {
    Json parsed;
    auto m = model_of(req, parsed);
    auto v = weights_side(m, st.budget_torsion);
    out = header("decide", req, model_to_json(m));
    out["exists"] = v.exists;
    if (v.exists) {
        out["certificate"] = "every residual character at every point is realized by a torsion class";
    } else {
        out["certificate"] = v.certificate;
        out["point"] = *v.failing_point;
    }
    out["torsion_order"] = v.torsion_order;
    return 0;
}

int cmd_build_cover(const Request& req, const Settings& st, Json& out) {
    Json parsed;
    auto m = model_of(req, parsed);
    auto t = torsor_side(m, st.budget_torsion);
    out = header("build-cover", req, model_to_json(m));
    out["exists"] = t.exists;
    out["p"] = m.characteristic();
    if (!t.exists) {
        out["certificate"] = t.certificate;
        out["point"] = *t.failing_point;
        return 0;
    }
    const auto& d = *t.description;
    out["group"] = d.A.orders();
    out["group_scheme"] = "D(A) for A = torsion of Pic";
    out["rank"] = d.cover.rank();
    Json gens = Json::array();
    for (const auto& g : d.generator_coords) gens.push_back(vec_json(g));
    out["generators"] = gens;
    out["phi"] = d.phi;
    out["presentation"] = d.cover.presentation();
    out["cocycle_triples"] = d.cover.check_cocycle(20000, req.seed);
    Json charts = Json::array();
    for (const auto& c : d.charts)
        charts.push_back({{"point", c.point}, {"branches", c.branches}, {"r", c.r}, {"phi", c.phi}});
    out["charts"] = charts;
    return 0;
}

int cmd_check_theorem(const Request& req, const Settings& st, Json& out) {
    Json parsed;
    auto m = model_of(req, parsed);
    auto rep = check_theorem(m, st.budget_torsion);
    out = header("check-theorem", req, model_to_json(m));
    out["model"] = model_json(m);
    out["weights_side"] = rep.weights_verdict;
    out["torsor_side"] = rep.torsor_verdict;
    out["agree"] = rep.agree;
    out["torsion_order"] = rep.torsion_order;
    out["cocycle_triples"] = rep.cocycle_triples;
    Json charts = Json::array();
    for (const auto& c : rep.charts)
        charts.push_back({{"point", c.point},
                          {"unit_rescaling", c.unit_rescaling},
                          {"carries_restrict", c.carries_restrict},
                          {"graded_isomorphic", c.graded_isomorphic},
                          {"refines_grading", c.refines_grading},
                          {"free_away", c.free_away},
                          {"pass", c.pass}});
    out["charts"] = charts;
    out["structure_module_weights"] = rep.structure_weights;
    out["pass"] = rep.pass;
    if (!rep.detail.empty()) out["detail"] = rep.detail;
    return rep.pass ? 0 : 1;
}

int cmd_verify_appendix(const Request& req, const Settings&, Json& out) {
    const auto family = req.number("family", 1);
    const auto p = req.number("p", family == 1 ? 2 : 3);
    const auto B = req.number("degree", 12);
    if (B > 1000) throw BudgetExceeded("degree", "truncation degree too large");
    AppendixReport rep;
    if (family == 1) rep = family1_verify({p, static_cast<unsigned>(B), false, req.seed});
    else if (family == 2) rep = family2_verify({p, static_cast<unsigned>(B), false, req.seed});
    else throw InputError("--family must be 1 or 2");
    out = header("verify-appendix", req,
                 "family=" + std::to_string(family) + "|p=" + std::to_string(p) + "|degree=" + std::to_string(B));
    out["family"] = rep.family;
    out["p"] = rep.p;
    out["degree"] = rep.degree;
    out["convention"] = rep.convention;
    out["scope"] = rep.scope;
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out["checks"] = checks;
    if (rep.family == 2) out["square_root"] = rep.square_root;
    out["nontrivial"] = rep.nontrivial;
    out["pass"] = rep.pass;
    return rep.pass ? 0 : 1;
}

int cmd_campaign(const Request& req, const Settings& st, Json& out) {
    std::uint64_t count = 1000, seed = req.seed;
    if (req.has("model")) {
        auto preset = parse_json(req.text("model"), "campaign preset");
        if (!preset.is_object() || !preset.contains("count")) throw InputError("a campaign preset needs \"count\"");
        count = positive_int(preset.at("count"), "count");
        if (preset.contains("seed") && !req.has("seed")) seed = preset.at("seed").get<std::uint64_t>();
    }
    count = req.number("count", count);
    if (count > 10'000'000) throw BudgetExceeded("count", "campaign size too large");
    Request effective = req;
    effective.seed = seed;
    auto res = run_campaign(seed, count, st.threads, st.budget_torsion);
    out = header("campaign", effective, "seed=" + std::to_string(seed) + "|count=" + std::to_string(count));
    out["count"] = res.count;
    out["passed"] = res.passed;
    out["discrepancies"] = res.discrepancies;
    out["with_cover"] = res.with_cover;
    out["charts_checked"] = res.charts_checked;
    out["budget_skipped"] = res.budget_skipped;
    Json fails = Json::array();
    for (const auto& f : res.failures)
        fails.push_back({{"index", f.index}, {"model_seed", f.model_seed}, {"model", parse_json(f.model, "model")},
                         {"detail", f.detail}});
    out["failures"] = fails;
    out["pass"] = res.discrepancies == 0 && res.budget_skipped == 0;
    if (res.discrepancies) return 1;
    if (res.budget_skipped) throw BudgetExceeded("torsion", std::to_string(res.budget_skipped) +
                                                                " models exceeded the torsion budget");
    return 0;
}

struct Entry {
    const char* name;
    Handler fn;
};

const Entry kCommands[] = {
    {"abelianize", cmd_abelianize}, {"kummer", cmd_kummer},
    {"parabolic", cmd_parabolic},   {"weights", cmd_weights},
    {"decide", cmd_decide},         {"build-cover", cmd_build_cover},
    {"check-theorem", cmd_check_theorem}, {"verify-appendix", cmd_verify_appendix},
    {"campaign", cmd_campaign},
};

void flatten(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) && j.size() <= 64) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

std::string render(const Json& j, const std::string& format) {
    if (format == "text") {
        std::string out;
        flatten(j, "", out);
        return out;
    }
    return j.dump(2) + "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kCommands) v.push_back(e.name);
        return v;
    }();
    return names;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw AssertionFailure("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

CommandOutcome run_command(const std::string& command, const std::string& request, const Settings& settings) {
    CommandOutcome res;
    const Entry* entry = nullptr;
    for (const auto& e : kCommands)
        if (command == e.name) entry = &e;
    std::string format = "json";
    auto fail = [&](int status, const std::string& kind, const std::string& msg, const std::string& budget) {
        res.status = status;
        res.error = msg;
        res.budget = budget;
        Json j;
        j["command"] = command;
        j["version"] = TAMER_VERSION;
        j["error"] = kind;
        j["message"] = msg;
        if (!budget.empty()) j["budget"] = budget;
        res.output = render(j, format);
    };
    if (!entry) {
        fail(2, "input", "unknown subcommand \"" + command + "\"", "");
        return res;
    }
    try {
        Request req;
        req.raw = request.empty() ? Json::object() : parse_json(request, "request");
        if (!req.raw.is_object()) throw InputError("request must be a JSON object");
        if (req.has("format")) {
            format = req.raw.at("format").get<std::string>();
            if (format != "json" && format != "text") {
                format = "json";
                throw InputError("--format must be json or text");
            }
        }
        req.format = format;
        req.seed = req.number("seed", 1);
        Json out;
        res.status = entry->fn(req, settings, out);
        res.output = render(out, format);
    } catch (const BudgetExceeded& e) {
        fail(3, "budget", e.what(), e.budget());
    } catch (const InputError& e) {
        fail(2, "input", e.what(), "");
    } catch (const nlohmann::json::exception& e) {
        fail(2, "input", std::string("input does not match the schema: ") + e.what(), "");
    } catch (const AssertionFailure& e) {
        fail(1, "assertion", e.what(), "");
    } catch (const std::exception& e) {
        fail(4, "internal", e.what(), "");
    }
    return res;
}

}  // namespace tamer::detail
