#include "equizeta/pipeline.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

#include "equizeta/errors.hpp"

namespace equizeta {

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

namespace {

std::vector<long> parse_index_set(const std::string& key, long n) {
    std::vector<long> out;
    std::istringstream is(key);
    std::string piece;
    while (std::getline(is, piece, ',')) {
        try {
            size_t used = 0;
            long v = std::stol(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            out.push_back(v - 1); // keys are 1-based
        } catch (const std::exception&) {
            throw ParseError("bad index-set key '" + key + "'");
        }
    }
    if (out.empty()) throw ParseError("empty index-set key");
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw ParseError("repeated index in key '" + key + "'");
    if (out.front() < 0 || out.back() >= n)
        throw ParseError("index out of range in key '" + key + "'");
    return out;
}

long json_to_long(const json& v, const char* what) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return v.get<long>();
}

} // namespace

ProblemSpec parse_problem(const json& doc) {
    if (!doc.is_object()) throw ParseError("problem document must be an object");
    ProblemSpec spec;
    if (!doc.contains("variables") || !doc["variables"].is_array())
        throw ParseError("'variables' must be an array of names");
    for (const auto& v : doc["variables"]) {
        if (!v.is_string()) throw ParseError("variable names must be strings");
        spec.variables.push_back(v.get<std::string>());
    }
    long n = static_cast<long>(spec.variables.size());
    if (n == 0) throw ParseError("at least one variable is required");

    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty())
        throw ParseError("'terms' must be a nonempty array");
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("exps") || !t["exps"].is_array())
            throw ParseError("each term needs an 'exps' array");
        Term term;
        for (const auto& e : t["exps"]) term.exps.push_back(json_to_long(e, "exponent"));
        if (static_cast<long>(term.exps.size()) != n)
            throw ParseError("term exponent count differs from the variable count");
        for (long e : term.exps)
            if (e < 0) throw ParseError("negative exponent");
        if (t.contains("coeff")) {
            const auto& c = t["coeff"];
            if (c.is_string()) term.coeff = parse_rational(c.get<std::string>());
            else if (c.is_number_integer()) term.coeff = mpq_class(c.get<long>());
            else throw ParseError("'coeff' must be a string or an integer");
        } else {
            term.coeff = 1;
        }
        spec.terms.push_back(std::move(term));
    }

    if (doc.contains("group")) {
        const auto& g = doc["group"];
        if (g.is_string()) {
            std::string s = g.get<std::string>();
            if (s == "monodromy-cyclic") spec.group_choice = GroupChoice::MonodromyCyclic;
            else if (s == "full-symmetry") spec.group_choice = GroupChoice::FullSymmetry;
            else throw ParseError("unknown group choice '" + s + "'");
        } else if (g.is_object() && g.contains("generators") && g["generators"].is_array()) {
            spec.group_choice = GroupChoice::Explicit;
            for (const auto& gen : g["generators"]) {
                if (!gen.is_array() || static_cast<long>(gen.size()) != n)
                    throw ParseError("generator tuples must match the variable count");
                std::vector<mpq_class> coords;
                for (const auto& c : gen) {
                    if (!c.is_string()) throw ParseError("generator entries must be rationals");
                    coords.push_back(parse_rational(c.get<std::string>()));
                }
                spec.generators.emplace_back(std::move(coords));
            }
        } else {
            throw ParseError("'group' must be a name or {generators: [...]}");
        }
    }

    if (doc.contains("truncation")) {
        spec.truncation = json_to_long(doc["truncation"], "truncation");
        if (spec.truncation < 0) throw ParseError("truncation must be >= 0");
    }

    if (doc.contains("overrides")) {
        const auto& ov = doc["overrides"];
        if (!ov.is_object()) throw ParseError("'overrides' must be an object");
        auto read_map = [&](const char* key, std::map<std::vector<long>, long>& into) {
            if (!ov.contains(key)) return;
            if (!ov[key].is_object()) throw ParseError(std::string(key) + " must be an object");
            for (auto it = ov[key].begin(); it != ov[key].end(); ++it)
                into[parse_index_set(it.key(), n)] = json_to_long(it.value(), "chi override");
        };
        read_map("chi_V", spec.overrides.chi_v);
        read_map("chi_Y", spec.overrides.chi_y);
    }
    return spec;
}

json problem_to_json(const ProblemSpec& spec) {
    json doc;
    doc["variables"] = spec.variables;
    json terms = json::array();
    for (const auto& t : spec.terms) {
        json jt;
        jt["exps"] = t.exps;
        jt["coeff"] = t.coeff.get_str();
        terms.push_back(std::move(jt));
    }
    doc["terms"] = std::move(terms);
    switch (spec.group_choice) {
        case GroupChoice::MonodromyCyclic: doc["group"] = "monodromy-cyclic"; break;
        case GroupChoice::FullSymmetry: doc["group"] = "full-symmetry"; break;
        case GroupChoice::Explicit: {
            json gens = json::array();
            for (const auto& g : spec.generators) {
                json coords = json::array();
                for (const auto& c : g.coords()) coords.push_back(c.get_str());
                gens.push_back(std::move(coords));
            }
            doc["group"] = json{{"generators", std::move(gens)}};
            break;
        }
    }
    doc["truncation"] = spec.truncation;
    if (!spec.overrides.empty()) {
        json ov;
        json jv, jy;
        for (const auto& [k, v] : spec.overrides.chi_v) jv[index_set_key(k)] = v;
        for (const auto& [k, v] : spec.overrides.chi_y) jy[index_set_key(k)] = v;
        if (!spec.overrides.chi_v.empty()) ov["chi_V"] = std::move(jv);
        if (!spec.overrides.chi_y.empty()) ov["chi_Y"] = std::move(jy);
        doc["overrides"] = std::move(ov);
    }
    return doc;
}

PipelineResult::PipelineResult(ProblemSpec s, QuasiPolynomial p, FiniteDiagonalGroup gf,
                               ExtendedGroup e, StrataChi st, BurnsideElement z,
                               ExtBurnsideElement orb, FiniteRepElement lp, NegSeries ps)
    : spec(std::move(s)),
      poly(std::move(p)),
      full_symmetry(std::move(gf)),
      ext(std::move(e)),
      strata(std::move(st)),
      zeta(std::move(z)),
      zeta_red(zeta - BurnsideElement::one(zeta.ambient())),
      orbit(std::move(orb)),
      log_p(std::move(lp)),
      tau_log_p(tau(log_p)),
      lhs(tau_log_p - orbit),
      rhs(ind_ext(zeta_red, ext)),
      residual(lhs - rhs),
      poincare(std::move(ps)) {}

PipelineResult run_pipeline(const ProblemSpec& spec) {
    long n = static_cast<long>(spec.variables.size());
    QuasiPolynomial poly =
        QuasiPolynomial(n, spec.terms).with_inferred_weights();
    FiniteDiagonalGroup gf = poly.symmetry_group();
    TorsionVector h = poly.monodromy_element();
    if (!gf.member(h)) throw InternalError("monodromy element outside the symmetry group");

    FiniteDiagonalGroup g = gf;
    switch (spec.group_choice) {
        case GroupChoice::FullSymmetry:
            g = gf;
            break;
        case GroupChoice::MonodromyCyclic:
            g = FiniteDiagonalGroup::canonicalize(n, {h});
            break;
        case GroupChoice::Explicit: {
            for (const auto& gen : spec.generators)
                if (!gf.member(gen))
                    throw InvalidInput("generator " + gen.to_string() +
                                       " does not preserve the polynomial");
            std::vector<TorsionVector> gens = spec.generators;
            gens.push_back(h); // the C*-part forces the monodromy element in
            g = FiniteDiagonalGroup::canonicalize(n, gens);
            break;
        }
    }
    ExtendedGroup ext(poly.weights(), g);

    unsigned long limit = default_resource_limit();
    StrataChi strata = compute_strata(poly, ext, spec.overrides, limit);

    BurnsideElement zeta = zeta_equivariant(strata, ext);
    ExtBurnsideElement orbit = orbit_invariant(strata, ext);
    FiniteRepElement log_p = log_poincare(poly, ext);

    long depth = std::max(spec.truncation, poly.weights().d.get_si());
    NegSeries counted =
        poincare_counted(PoincareKind::Hypersurface, poly, ext, depth, limit);

    PipelineResult r(spec, poly, std::move(gf), std::move(ext), std::move(strata),
                     std::move(zeta), std::move(orbit), std::move(log_p), counted);
    r.depth = depth;
    r.ok = r.residual.is_zero();
    r.secondary_ok = (red(r.lhs) == r.zeta_red);
    r.independent = true;
    for (const auto& e : r.strata.entries)
        if (e.prov_y != ChiProvenance::Polytope) r.independent = false;
    r.closed_matches_counted =
        (expand(poincare_closed(PoincareKind::Hypersurface, r.poly, r.ext), depth) == counted);
    r.log_matches_finite_form = (log_map(counted) == to_series(r.log_p, depth));
    return r;
}

ClassicalReport run_classical(const PipelineResult& r) {
    const ExtendedGroup& ext = r.ext;
    FiniteDiagonalGroup hgroup =
        FiniteDiagonalGroup::canonicalize(ext.dim(), {ext.monodromy()});
    if (ext.group() != hgroup)
        throw NonCyclicAmbient(
            "classical invariants need the cyclic group generated by the monodromy element");

    CyclotomicFunction zeta_t = to_cyclotomic(r.zeta);
    CyclotomicFunction zeta_red_t = zeta_t;
    zeta_red_t.add_factor(1, -1);
    CyclotomicFunction dual = saito_dual(zeta_red_t);

    const mpz_class& d = r.poly.weights().d;
    CyclotomicFunction orbit_t(d);
    for (const auto& [h, c] : r.orbit.coeffs()) orbit_t.add_factor(h.order(), c);

    CyclotomicFunction poincare_t(d);
    poincare_t.add_factor(d, 1);
    for (const auto& qi : r.poly.weights().q) poincare_t.add_factor(qi, -1);

    ClassicalReport rep{zeta_t, zeta_red_t, dual, orbit_t, poincare_t,
                        {},     {},         false, 0,     0,
                        milnor_number(r.poly)};
    rep.poincare_coefficients = r.poincare.classical_coefficients();
    // Residual of P_X(t) * Or_X(t) - dual(t) as a truncated power series.
    auto lhs = (poincare_t * orbit_t).expand(r.depth);
    auto rhs = dual.expand(r.depth);
    rep.ini_residual.resize(lhs.size());
    rep.ini_ok = true;
    for (size_t i = 0; i < lhs.size(); ++i) {
        rep.ini_residual[i] = lhs[i] - rhs[i];
        if (rep.ini_residual[i] != 0) rep.ini_ok = false;
    }
    rep.sum_m_sm = 0;
    for (const auto& [m, e] : zeta_t.exponents()) rep.sum_m_sm += m * e;
    rep.chi_v_total = r.strata.chi_v_total();
    return rep;
}

std::string index_set_key(const std::vector<long>& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
    return os.str();
}

json subgroup_to_json(const FiniteDiagonalGroup& g) {
    json j;
    j["N"] = g.exponent().get_si();
    json basis = json::array();
    for (long i = 0; i < g.basis().rows(); ++i) {
        json row = json::array();
        for (long c = 0; c < g.basis().cols(); ++c) row.push_back(g.basis().at(i, c).get_si());
        basis.push_back(std::move(row));
    }
    j["basis"] = std::move(basis);
    j["order"] = g.order().get_si();
    return j;
}

json burnside_to_json(const BurnsideElement& e) {
    json arr = json::array();
    for (const auto& [k, v] : e.coeffs()) {
        json t;
        t["coeff"] = v;
        t["subgroup"] = subgroup_to_json(k);
        arr.push_back(std::move(t));
    }
    return arr;
}

json ext_burnside_to_json(const ExtBurnsideElement& e) {
    json arr = json::array();
    for (const auto& [k, v] : e.coeffs()) {
        json t;
        t["coeff"] = v;
        t["subgroup"] = subgroup_to_json(k);
        arr.push_back(std::move(t));
    }
    return arr;
}

json character_to_json(const ExtCharacter& c) {
    json j;
    j["k"] = c.k;
    json chi = json::array();
    for (const auto& v : c.chi) chi.push_back(v.get_str());
    j["chi"] = std::move(chi);
    return j;
}

namespace {

json cyclotomic_to_json(const CyclotomicFunction& f) {
    json j;
    j["product"] = f.to_string();
    json exps;
    for (const auto& [m, e] : f.exponents()) exps[m.get_str()] = e;
    j["exponents"] = std::move(exps);
    return j;
}

json weights_section(const PipelineResult& r) {
    json w;
    json q = json::array();
    for (const auto& qi : r.poly.weights().q) q.push_back(qi.get_si());
    w["q"] = std::move(q);
    w["d"] = r.poly.weights().d.get_si();
    return w;
}

json groups_section(const PipelineResult& r) {
    json g;
    g["G"] = subgroup_to_json(r.ext.group());
    g["G_f"] = subgroup_to_json(r.full_symmetry);
    g["order_G"] = r.ext.group().order().get_si();
    g["order_G_f"] = r.full_symmetry.order().get_si();
    json h = json::array();
    for (const auto& c : r.ext.monodromy().coords()) h.push_back(c.get_str());
    g["h"] = std::move(h);
    g["h_order"] = r.ext.monodromy().order().get_si();
    json factors = json::array();
    for (const auto& f : r.ext.group().invariant_factors()) factors.push_back(f.get_si());
    g["invariant_factors_G"] = std::move(factors);
    json factors_f = json::array();
    for (const auto& f : r.full_symmetry.invariant_factors()) factors_f.push_back(f.get_si());
    g["invariant_factors_G_f"] = std::move(factors_f);
    return g;
}

json strata_section(const PipelineResult& r) {
    json s;
    for (const auto& e : r.strata.entries) {
        json entry;
        entry["chi_V"] = e.chi_v;
        entry["chi_V_provenance"] = provenance_name(e.prov_v);
        if (e.chi_v_alt) entry["chi_V_polytope"] = *e.chi_v_alt;
        if (e.routes_agree) entry["routes_agree"] = *e.routes_agree;
        entry["chi_Y"] = e.chi_y;
        entry["chi_Y_provenance"] = provenance_name(e.prov_y);
        entry["isotropy_G"] = subgroup_to_json(e.iso_in_g);
        entry["isotropy_ext"] = subgroup_to_json(e.iso_in_ext);
        s[index_set_key(e.index_set)] = std::move(entry);
    }
    return s;
}

json poincare_section(const PipelineResult& r) {
    json p;
    p["truncation"] = r.depth;
    p["closed_form"] = poincare_closed(PoincareKind::Hypersurface, r.poly, r.ext).to_string();
    p["classical_coefficients"] = r.poincare.classical_coefficients();
    json series = json::array();
    for (const auto& [ch, v] : r.poincare.coeffs()) {
        json t;
        t["character"] = character_to_json(ch);
        t["coeff"] = v;
        series.push_back(std::move(t));
    }
    p["series"] = std::move(series);
    json logj = json::array();
    for (const auto& [ch, v] : r.log_p.coeffs()) {
        json t;
        t["character"] = character_to_json(ch);
        t["coeff"] = v;
        logj.push_back(std::move(t));
    }
    p["log"] = std::move(logj);
    p["closed_matches_counted"] = r.closed_matches_counted;
    p["log_matches_finite_form"] = r.log_matches_finite_form;
    return p;
}

json zeta_section(const PipelineResult& r) {
    json z;
    z["burnside"] = burnside_to_json(r.zeta);
    z["reduced"] = burnside_to_json(r.zeta_red);
    if (r.ext.group().is_cyclic()) {
        CyclotomicFunction f = to_cyclotomic(r.zeta);
        z["cyclotomic"] = cyclotomic_to_json(f);
    }
    return z;
}

json verification_section(const PipelineResult& r) {
    json v;
    v["ok"] = r.ok;
    v["secondary_ok"] = r.secondary_ok;
    v["independent"] = r.independent;
    v["lhs"] = ext_burnside_to_json(r.lhs);
    v["rhs"] = ext_burnside_to_json(r.rhs);
    v["residual"] = ext_burnside_to_json(r.residual);
    v["tau_log_poincare"] = ext_burnside_to_json(r.tau_log_p);
    return v;
}

} // namespace

json analyze_report(const PipelineResult& r) {
    json doc;
    doc["weights"] = weights_section(r);
    doc["groups"] = groups_section(r);
    doc["strata"] = strata_section(r);
    return doc;
}

json verify_report(const PipelineResult& r) {
    json doc = analyze_report(r);
    doc["poincare"] = poincare_section(r);
    doc["zeta"] = zeta_section(r);
    doc["orbit"] = ext_burnside_to_json(r.orbit);
    doc["verification"] = verification_section(r);
    return doc;
}

json classical_report_json(const PipelineResult& r, const ClassicalReport& c) {
    json doc;
    doc["weights"] = weights_section(r);
    doc["groups"] = groups_section(r);
    doc["strata"] = strata_section(r);
    json cl;
    cl["zeta"] = cyclotomic_to_json(c.zeta_t);
    cl["zeta_reduced"] = cyclotomic_to_json(c.zeta_reduced_t);
    cl["saito_dual_of_reduced"] = cyclotomic_to_json(c.saito_dual_t);
    cl["orbit_function"] = cyclotomic_to_json(c.orbit_t);
    json px;
    px["closed"] = cyclotomic_to_json(c.poincare_t);
    px["coefficients"] = c.poincare_coefficients;
    cl["P_X"] = std::move(px);
    json res = json::array();
    for (const auto& x : c.ini_residual) res.push_back(x.get_si());
    cl["ini_residual"] = std::move(res);
    cl["ini_ok"] = c.ini_ok;
    cl["sum_m_s_m"] = c.sum_m_sm.get_si();
    cl["chi_V_total"] = c.chi_v_total;
    cl["milnor_number"] = c.milnor.get_str();
    doc["classical"] = std::move(cl);
    return doc;
}

namespace {

ProblemSpec make_spec(std::vector<std::string> vars, std::vector<Term> terms,
                      GroupChoice gc) {
    ProblemSpec s;
    s.variables = std::move(vars);
    s.terms = std::move(terms);
    s.group_choice = gc;
    s.truncation = 12;
    return s;
}

Term t(std::vector<long> exps) { return Term{std::move(exps), mpq_class(1)}; }

} // namespace

std::vector<CorpusEntry> builtin_corpus() {
    struct Proto {
        std::string name;
        std::vector<std::string> vars;
        std::vector<Term> terms;
    };
    std::vector<Proto> protos = {
        {"pt_x", {"x"}, {t({1})}},
        {"a1_x2", {"x"}, {t({2})}},
        {"a4_x5", {"x"}, {t({5})}},
        {"cusp_x2_y3", {"x", "y"}, {t({2, 0}), t({0, 3})}},
        {"lines3_x3_y3", {"x", "y"}, {t({3, 0}), t({0, 3})}},
        {"a3_x2y_y2", {"x", "y"}, {t({2, 1}), t({0, 2})}},
        {"chain_x3_xy2", {"x", "y"}, {t({3, 0}), t({1, 2})}},
        {"node_xy_y4", {"x", "y"}, {t({1, 1}), t({0, 4})}},
        {"loop_x3y_xy3", {"x", "y"}, {t({3, 1}), t({1, 3})}},
        {"e8_x2_y3_z5", {"x", "y", "z"}, {t({2, 0, 0}), t({0, 3, 0}), t({0, 0, 5})}},
        {"fermat_x3_y3_z3", {"x", "y", "z"}, {t({3, 0, 0}), t({0, 3, 0}), t({0, 0, 3})}},
    };
    std::vector<CorpusEntry> out;
    for (const auto& p : protos) {
        out.push_back({p.name + "/cyclic",
                       make_spec(p.vars, p.terms, GroupChoice::MonodromyCyclic)});
        out.push_back({p.name + "/full",
                       make_spec(p.vars, p.terms, GroupChoice::FullSymmetry)});
    }
    return out;
}

namespace {

struct EntryResult {
    json summary;
    bool ok = false;
};

EntryResult run_corpus_entry(const CorpusEntry& entry) {
    EntryResult er;
    PipelineResult r = run_pipeline(entry.spec);
    bool routes_agree = true;
    for (const auto& e : r.strata.entries)
        if (e.routes_agree && !*e.routes_agree) routes_agree = false;
    json s;
    s["ok"] = r.ok;
    s["secondary_ok"] = r.secondary_ok;
    s["independent"] = r.independent;
    s["routes_agree"] = routes_agree;
    s["closed_matches_counted"] = r.closed_matches_counted;
    s["log_matches_finite_form"] = r.log_matches_finite_form;
    s["order_G"] = r.ext.group().order().get_si();
    s["residual"] = ext_burnside_to_json(r.residual);
    bool classical_ok = true;
    FiniteDiagonalGroup hgroup =
        FiniteDiagonalGroup::canonicalize(r.ext.dim(), {r.ext.monodromy()});
    if (r.ext.group() == hgroup) {
        ClassicalReport c = run_classical(r);
        s["ini_ok"] = c.ini_ok;
        s["sum_m_s_m"] = c.sum_m_sm.get_si();
        s["zeta_function"] = c.zeta_t.to_string();
        classical_ok = c.ini_ok;
    }
    er.ok = r.ok && r.secondary_ok && routes_agree && r.closed_matches_counted &&
            r.log_matches_finite_form && classical_ok;
    er.summary = std::move(s);
    return er;
}

} // namespace

CorpusOutcome run_corpus() {
    auto corpus = builtin_corpus();
    auto run_one = [](const CorpusEntry& entry) {
        try {
            return run_corpus_entry(entry);
        } catch (const std::exception& ex) {
            EntryResult er;
            er.ok = false;
            er.summary = json{{"ok", false}, {"error", ex.what()}};
            return er;
        }
    };

    std::vector<std::future<EntryResult>> futures;
    futures.reserve(corpus.size());
    for (const auto& entry : corpus)
        futures.push_back(std::async(std::launch::async, run_one, std::cref(entry)));

    CorpusOutcome out;
    out.all_ok = true;
    json entries;
    for (size_t i = 0; i < corpus.size(); ++i) {
        EntryResult er = futures[i].get();
        entries[corpus[i].name] = std::move(er.summary);
        if (!er.ok) out.all_ok = false;
    }
    out.report["entries"] = std::move(entries);
    out.report["ok"] = out.all_ok;
    out.report["count"] = corpus.size();
    return out;
}

} // namespace equizeta
