#include "bk/io.hpp"

#include <algorithm>
#include <set>

#include "bk/error.hpp"

namespace bk {

namespace {

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    require(it != j.end(), ErrorCode::Schema, where + ": missing key '" + key + "'");
    try {
        return it->template get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(ErrorCode::Schema, where + ": key '" + key + "' has the wrong type");
    }
}

const Json& array_at(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    require(it != j.end(), ErrorCode::Schema, where + ": missing key '" + key + "'");
    require(it->is_array(), ErrorCode::Schema, where + ": '" + key + "' must be an array");
    return *it;
}

bool is_natural(const Json& x) { return x.is_number_integer() && x.get<std::int64_t>() >= 0; }

Perm perm_from_json(const Json& j, const std::string& where) {
    require(j.is_array(), ErrorCode::Schema, where + ": permutation must be an array of images");
    Perm out;
    for (const auto& x : j) {
        require(is_natural(x), ErrorCode::Schema, where + ": permutation images must be non-negative integers");
        out.push_back(x.get<std::uint32_t>());
    }
    return out;
}

std::size_t element_of_word(const FiniteGroup& g, const Json& word, const std::string& where) {
    require(word.is_array(), ErrorCode::Schema, where + ": group element must be a word (list of generator indices)");
    std::size_t x = g.identity();
    for (const auto& s : word) {
        require(is_natural(s) && s.get<std::size_t>() < g.generators().size(), ErrorCode::Schema,
                where + ": word letter out of range");
        x = g.mul(x, g.generator_element(s.get<std::size_t>()));
    }
    return x;
}

Json word_to_json(const FiniteGroup& g, std::size_t x) { return Json(g.word(x)); }

Json presentation_fields(const ModelGN& model, const CatalogModule& m, Json out) {
    const FiniteGroup& H = *model.H;
    const FieldSpec& k = model.V.field();
    Json gens = Json::array();
    for (int deg : m.presentation.generator_degrees) gens.push_back({{"degree", deg}});
    out["generators"] = gens;
    Json rels = Json::array();
    for (const auto& r : m.presentation.relations) {
        const std::size_t target = r.terms.empty() ? 0 : r.terms.front().gen;
        Json terms = Json::array();
        for (const auto& t : r.terms) {
            Json term = {{"h", word_to_json(H, t.h)}, {"monomial", t.monomial}, {"coeff", ffelem_to_json(k, t.coeff)}};
            if (t.gen != target) term["gen"] = t.gen;
            terms.push_back(std::move(term));
        }
        rels.push_back({{"target_gen", target}, {"terms", terms}});
    }
    out["relations"] = rels;
    if (m.cutoff) out["cutoff"] = *m.cutoff;
    return out;
}

CatalogModule presentation_from(const ModelGN& model, const Json& j, const std::string& where) {
    const FiniteGroup& H = *model.H;
    const FieldSpec& k = model.V.field();
    CatalogModule m;
    if (j.contains("name")) m.name = get<std::string>(j, "name", where);
    for (const auto& g : array_at(j, "generators", where)) {
        check_keys(g, {"degree"}, {}, where + ".generators[]");
        m.presentation.generator_degrees.push_back(get<int>(g, "degree", where + ".generators[]"));
    }
    const std::size_t ngens = m.presentation.generator_degrees.size();
    if (j.contains("relations"))
        for (const auto& r : array_at(j, "relations", where)) {
            const std::string rw = where + ".relations[]";
            check_keys(r, {"target_gen", "terms"}, {}, rw);
            const auto target = get<std::size_t>(r, "target_gen", rw);
            require(target < ngens, ErrorCode::Schema, rw + ": target_gen out of range");
            Relation rel;
            for (const auto& t : array_at(r, "terms", rw)) {
                const std::string tw = rw + ".terms[]";
                check_keys(t, {"h", "monomial", "coeff"}, {"gen"}, tw);
                RelationTerm term;
                term.gen = t.contains("gen") ? get<std::size_t>(t, "gen", tw) : target;
                require(term.gen < ngens, ErrorCode::Schema, tw + ": gen out of range");
                term.h = element_of_word(H, t.at("h"), tw);
                term.monomial = get<std::vector<int>>(t, "monomial", tw);
                require(term.monomial.size() == static_cast<std::size_t>(model.d()), ErrorCode::Schema,
                        tw + ": monomial needs " + std::to_string(model.d()) + " exponents");
                for (int e : term.monomial) require(e >= 0, ErrorCode::Schema, tw + ": negative exponent");
                term.coeff = ffelem_from_json(k, t.at("coeff"));
                rel.terms.push_back(std::move(term));
            }
            require(!rel.terms.empty(), ErrorCode::Schema, rw + ": relation without terms");
            m.presentation.relations.push_back(std::move(rel));
        }
    if (j.contains("cutoff")) {
        m.cutoff = get<int>(j, "cutoff", where);
        require(*m.cutoff >= 0, ErrorCode::Schema, where + ": cutoff must be non-negative");
    }
    return m;
}

Json labelled(const FiniteGroup& g, std::size_t x) { return element_label(g, x); }

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
    }
}

void check_keys(const Json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional,
                const std::string& where) {
    require(j.is_object(), ErrorCode::Schema, where + ": expected an object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        allowed.insert(k);
        require(j.contains(k), ErrorCode::Schema, where + ": missing key '" + k + "'");
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [key, value] : j.items())
        require(allowed.count(key) > 0, ErrorCode::Schema, where + ": unknown key '" + key + "'");
}

// ---------------------------------------------------------------------------

Json group_to_json(const FiniteGroup& g) {
    Json gens = Json::array();
    for (const auto& p : g.generators()) gens.push_back(p);
    return {{"points", g.n_points()}, {"generators", gens}};
}

GroupPtr group_from_json(const Json& j, std::size_t max_order) {
    check_keys(j, {"points", "generators"}, {}, "group");
    const auto n = get<std::size_t>(j, "points", "group");
    std::vector<Perm> gens;
    for (const auto& p : array_at(j, "generators", "group")) gens.push_back(perm_from_json(p, "group.generators"));
    return FiniteGroup::close(n, std::move(gens), max_order);
}

std::string element_label(const FiniteGroup& g, std::size_t x) { return cycle_string(g.element(x)); }

Json field_to_json(const FieldSpec& k) { return {{"p", k.p()}, {"s", k.s()}}; }

FieldSpec field_from_json(const Json& j) {
    check_keys(j, {"p", "s"}, {}, "field");
    return make_field(get<int>(j, "p", "field"), get<int>(j, "s", "field"));
}

Json ffelem_to_json(const FieldSpec& k, const FFElem& x) {
    return k.digits(x);
}

FFElem ffelem_from_json(const FieldSpec& k, const Json& j) {
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        require(v >= 0 && v < k.p(), ErrorCode::Schema, "field element digit out of range [0, p)");
        return k.from_int(v);
    }
    require(j.is_array(), ErrorCode::Schema, "field element must be a digit or a digit list");
    std::vector<int> digits;
    for (const auto& d : j) {
        require(d.is_number_integer(), ErrorCode::Schema, "field element digits must be integers");
        digits.push_back(d.get<int>());
    }
    return k.from_digits(digits);
}

Json rep_to_json(const Rep& a) {
    const FieldSpec& k = a.field();
    Json mats = Json::array();
    for (const auto& g : a.generators()) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(ffelem_to_json(k, g(i, c)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    Json out = {{"group", group_to_json(*a.group())}, {"field", field_to_json(k)}, {"matrices", mats}};
    if (a.generators().empty()) out["dim"] = a.dim();
    return out;
}

Rep rep_from_json(const Json& j, std::size_t max_order) {
    check_keys(j, {"group", "field", "matrices"}, {"dim"}, "representation");
    GroupPtr g = group_from_json(j.at("group"), max_order);
    const FieldSpec k = field_from_json(j.at("field"));
    std::vector<FFMatrix> gens;
    for (const auto& mat : array_at(j, "matrices", "representation")) {
        require(mat.is_array(), ErrorCode::Schema, "representation: each matrix must be a list of rows");
        const auto n = static_cast<Eigen::Index>(mat.size());
        FFMatrix a(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const Json& row = mat[static_cast<std::size_t>(r)];
            require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n, ErrorCode::DimMismatch,
                    "representation: matrices must be square");
            for (Eigen::Index c = 0; c < n; ++c) a(r, c) = ffelem_from_json(k, row[static_cast<std::size_t>(c)]);
        }
        gens.push_back(std::move(a));
    }
    const int dim = j.contains("dim") ? get<int>(j, "dim", "representation") : -1;
    require(!gens.empty() || dim >= 0, ErrorCode::Schema, "representation: 'dim' is required when there are no generators");
    return Rep::make(std::move(g), k, std::move(gens), dim);
}

Json model_to_json(const ModelGN& model) { return rep_to_json(model.V); }

ModelGN model_from_json(const Json& j, std::size_t max_order) { return ModelGN::make(rep_from_json(j, max_order)); }

// ---------------------------------------------------------------------------

Json cyclo_to_json(const CycloNum& x) {
    if (x.is_rational()) return {{"m", 1}, {"coeffs", {to_string(x.rational_value())}}};
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
    return {{"m", x.conductor()}, {"coeffs", coeffs}};
}

CycloNum cyclo_from_json(const Json& j) {
    check_keys(j, {"m", "coeffs"}, {}, "cyclotomic number");
    const int m = get<int>(j, "m", "cyclotomic number");
    require(m >= 1, ErrorCode::Schema, "cyclotomic number: m must be positive");
    std::vector<Rational> coeffs;
    for (const auto& c : array_at(j, "coeffs", "cyclotomic number")) {
        require(c.is_string(), ErrorCode::Schema, "cyclotomic number: coefficients are rational strings");
        coeffs.push_back(parse_rational(c.get<std::string>()));
    }
    return CycloNum(m, std::move(coeffs));
}

Json laurent_to_json(const LaurentPoly& f) {
    Json terms = Json::object();
    for (const auto& [deg, c] : f.terms()) terms[std::to_string(deg)] = cyclo_to_json(c);
    return {{"m", f.conductor()}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const Json& j) {
    check_keys(j, {"m", "terms"}, {}, "Laurent polynomial");
    LaurentPoly out(get<int>(j, "m", "Laurent polynomial"));
    const Json& terms = j.at("terms");
    require(terms.is_object(), ErrorCode::Schema, "Laurent polynomial: terms must map degrees to coefficients");
    for (const auto& [key, c] : terms.items()) {
        std::size_t used = 0;
        int deg = 0;
        try {
            deg = std::stoi(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == key.size() && !key.empty(), ErrorCode::Schema, "Laurent polynomial: degree key '" + key + "' is not an integer");
        out.set_coeff(deg, cyclo_from_json(c));
    }
    return out;
}

Json ratfunc_to_json(const RatFuncT& f) {
    return {{"num", laurent_to_json(f.num)}, {"den_exp", f.den_exp}, {"m", f.m}, {"text", to_string(f)}};
}

RatFuncT ratfunc_from_json(const Json& j) {
    check_keys(j, {"num", "den_exp", "m"}, {"text"}, "rational function");
    RatFuncT f;
    f.num = laurent_from_json(j.at("num"));
    f.den_exp = get<int>(j, "den_exp", "rational function");
    f.m = get<int>(j, "m", "rational function");
    return f;
}

// ---------------------------------------------------------------------------

Json module_to_json(const ModelGN& model, const CatalogModule& m) {
    Json out = Json::object();
    if (!m.name.empty()) out["name"] = m.name;
    out["model"] = model_to_json(model);
    return presentation_fields(model, m, std::move(out));
}

ModuleDoc module_from_json(const Json& j, std::size_t max_order) {
    check_keys(j, {"model", "generators"}, {"name", "relations", "cutoff"}, "module");
    ModuleDoc doc{model_from_json(j.at("model"), max_order), {}};
    doc.module = presentation_from(doc.model, j, "module");
    return doc;
}

Json catalog_to_json(const Catalog& c) {
    Json out = Json::object();
    if (!c.example.empty()) out["example"] = c.example;
    out["model"] = model_to_json(c.model);
    Json mods = Json::array();
    for (const auto& m : c.modules) {
        Json entry = Json::object();
        entry["name"] = m.name;
        mods.push_back(presentation_fields(c.model, m, std::move(entry)));
    }
    out["modules"] = mods;
    Json ranks = Json::array();
    for (const auto& r : c.rank_catalogs) ranks.push_back({{"i", r.i}, {"modules", r.modules}});
    out["rank_catalogs"] = ranks;
    return out;
}

Catalog catalog_from_json(const Json& j, std::size_t max_order) {
    check_keys(j, {"model", "modules"}, {"example", "rank_catalogs"}, "catalog");
    Catalog c;
    if (j.contains("example")) c.example = get<std::string>(j, "example", "catalog");
    c.model = model_from_json(j.at("model"), max_order);
    std::set<std::string> names;
    for (const auto& m : array_at(j, "modules", "catalog")) {
        check_keys(m, {"name", "generators"}, {"relations", "cutoff"}, "catalog.modules[]");
        c.modules.push_back(presentation_from(c.model, m, "catalog.modules[]"));
        require(names.insert(c.modules.back().name).second, ErrorCode::Schema, "catalog: duplicate module name " + c.modules.back().name);
    }
    if (j.contains("rank_catalogs"))
        for (const auto& r : array_at(j, "rank_catalogs", "catalog")) {
            check_keys(r, {"i", "modules"}, {}, "catalog.rank_catalogs[]");
            RankCatalog rc{get<int>(r, "i", "catalog.rank_catalogs[]"), get<std::vector<std::string>>(r, "modules", "catalog.rank_catalogs[]")};
            for (const auto& name : rc.modules)
                require(names.count(name) > 0, ErrorCode::Schema, "catalog: rank catalog names unknown module " + name);
            c.rank_catalogs.push_back(std::move(rc));
        }
    return c;
}

Catalog modules_from_json(const Json& j, std::size_t max_order) {
    require(j.is_object(), ErrorCode::Schema, "expected a module or catalog document");
    if (j.contains("modules")) return catalog_from_json(j, max_order);
    ModuleDoc doc = module_from_json(j, max_order);
    Catalog c;
    c.model = std::move(doc.model);
    if (doc.module.name.empty()) doc.module.name = "M";
    c.modules.push_back(std::move(doc.module));
    return c;
}

HallJob hall_job_from_json(const Json& j, std::size_t max_order) {
    check_keys(j, {"group", "subgroup", "p", "q"}, {}, "hall job");
    HallJob job;
    job.group = group_from_json(j.at("group"), max_order);
    job.p = get<int>(j, "p", "hall job");
    job.q = get<std::int64_t>(j, "q", "hall job");
    std::vector<std::size_t> gens;
    for (const auto& s : array_at(j, "subgroup", "hall job")) {
        if (is_natural(s)) {
            const auto i = s.get<std::size_t>();
            require(i < job.group->generators().size(), ErrorCode::Schema, "hall job: subgroup generator index out of range");
            gens.push_back(job.group->generator_element(i));
        } else {
            const auto idx = job.group->index_of(perm_from_json(s, "hall job.subgroup"));
            require(idx.has_value(), ErrorCode::NotSubgroup, "hall job: permutation is not in the group");
            gens.push_back(*idx);
        }
    }
    job.subgroup = subgroup_closure(*job.group, gens);
    return job;
}

// ---------------------------------------------------------------------------

Json orbits_to_json(const FiniteGroup& g, const OrbitPartition& orbits) {
    Json blocks = Json::array();
    for (std::size_t b = 0; b < orbits.size(); ++b) {
        Json elems = Json::array();
        for (std::size_t x : orbits.blocks[b]) elems.push_back(labelled(g, x));
        blocks.push_back({{"representative", labelled(g, orbits.representative(b))},
                          {"order", g.element_order(orbits.representative(b))},
                          {"size", orbits.blocks[b].size()},
                          {"elements", elems}});
    }
    return {{"group_order", g.order()}, {"count", orbits.size()}, {"blocks", blocks}};
}

Json brauer_to_json(const BrauerChar& chi, const OrbitPartition& orbits) {
    Json values = Json::array();
    for (std::size_t b = 0; b < orbits.size(); ++b) {
        const std::size_t g = orbits.representative(b);
        values.push_back({{"representative", labelled(*chi.group, g)}, {"value", cyclo_to_json(chi.at(g))}});
    }
    return {{"m", chi.m}, {"values", values}};
}

Json psi_to_json(const ModelGN& model) {
    const OrbitPartition orbits = model.orbits();
    Json rows = Json::array();
    for (std::size_t b = 0; b < orbits.size(); ++b) {
        const std::size_t g = orbits.representative(b);
        const LaurentPoly f = psi(model, g);
        rows.push_back({{"representative", labelled(*model.H, g)},
                        {"psi", laurent_to_json(f)},
                        {"text", to_string(f)},
                        {"centralizer_dim", centralizer_dim(model, g)}});
    }
    Json counts = Json::array();
    for (int i = 0; i <= model.d(); ++i) counts.push_back(s_filtration(model, i).count());
    return {{"d", model.d()}, {"m", model.m()}, {"orbits", rows}, {"s_filtration_counts", counts}};
}

Json tor_to_json(const TorTable& tor, const ModelGN& model, const OrbitPartition& orbits) {
    const CharacterContext& ctx = model.context();
    Json pieces = Json::array();
    for (const auto& piece : tor.pieces) {
        Json chars = Json::array();
        for (std::size_t b = 0; b < orbits.size(); ++b) chars.push_back(cyclo_to_json(ctx.value(piece.action.matrix(orbits.representative(b)))));
        pieces.push_back({{"j", piece.j}, {"n", piece.n}, {"dim", piece.action.dim()}, {"character", chars}});
    }
    Json reps = Json::array();
    for (std::size_t b = 0; b < orbits.size(); ++b) reps.push_back(labelled(*model.H, orbits.representative(b)));
    const auto& cert = tor.certificate;
    return {{"d", tor.d},
            {"window", {tor.lo, tor.hi}},
            {"dims", tor.dims},
            {"representatives", reps},
            {"pieces", pieces},
            {"certificate",
             {{"zero_window", cert.window},
              {"zero_from", cert.zero_from},
              {"euler_ok", cert.euler_ok},
              {"identity_ok", cert.identity_ok},
              {"residual", cert.residual}}}};
}

Json zeta_to_json(const ModuleAnalysis& a, const ModelGN& model) {
    Json rows = Json::array();
    for (std::size_t b = 0; b < a.chars.orbits.size(); ++b)
        rows.push_back({{"representative", labelled(*model.H, a.chars.orbits.representative(b))},
                        {"series", laurent_to_json(a.zeta[b])},
                        {"rational", ratfunc_to_json(a.rational[b].f)},
                        {"verified_through", a.rational[b].verified_through},
                        {"tail", a.rational[b].tail}});
    return {{"dimension", a.dimension}, {"orbits", rows}};
}

Json rho_to_json(const ModuleAnalysis& a, const ModelGN& model) {
    Json rows = Json::array();
    for (std::size_t b = 0; b < a.chars.orbits.size(); ++b)
        rows.push_back({{"representative", labelled(*model.H, a.chars.orbits.representative(b))},
                        {"rho", cyclo_to_json(a.rho[b])},
                        {"centralizer_dim", a.centralizer_dims[b]}});
    return {{"dimension", a.dimension}, {"values", rows}};
}

Json key_formula_to_json(const KeyFormulaReport& r, const ModelGN& model) {
    return {{"representative", labelled(*model.H, r.element)},
            {"lhs", laurent_to_json(r.lhs)},
            {"rhs", laurent_to_json(r.rhs)},
            {"ok", r.ok}};
}

Json main_formula_to_json(const MainFormulaReport& r, const ModelGN& model) {
    return {{"representative", labelled(*model.H, r.element)},
            {"rho", cyclo_to_json(r.rho)},
            {"value_at_one", cyclo_to_json(r.value)},
            {"ok", r.ok}};
}

Json vanishing_to_json(const VanishingReport& r, const ModelGN& model) {
    Json rows = Json::array();
    for (const auto& e : r.entries)
        rows.push_back({{"representative", labelled(*model.H, e.element)},
                        {"centralizer_dim", e.centralizer_dim},
                        {"forced", e.forced},
                        {"rho", cyclo_to_json(e.rho)},
                        {"ok", e.ok}});
    return {{"dimension", r.dimension}, {"entries", rows}, {"ok", r.ok}};
}

Json rank_to_json(const RankReport& r, const ModelGN& model, const std::vector<std::string>& names, const OrbitPartition& orbits) {
    Json reps = Json::array();
    for (std::size_t b = 0; b < orbits.size(); ++b) reps.push_back(labelled(*model.H, orbits.representative(b)));
    Json rows = Json::array();
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        Json vals = Json::array();
        for (const auto& v : r.values[k]) vals.push_back(cyclo_to_json(v));
        rows.push_back({{"module", names[k]}, {"dimension", r.dimensions[k]}, {"rho", vals}});
    }
    Json witnesses = Json::array();
    for (std::size_t k : r.witnesses) witnesses.push_back(names[k]);
    return {{"i", r.i},         {"representatives", reps}, {"values", rows},           {"rank", r.rank},
            {"bound", r.bound}, {"ok", r.ok},             {"equality", r.rank == r.bound}, {"witnesses", witnesses}};
}

Json hall_to_json(const HallReport& r, const FiniteGroup& g) {
    Json pairs = Json::array();
    for (std::size_t b = 0; b < r.pairing.size(); ++b)
        pairs.push_back({{"upstairs", labelled(g, r.upstairs.representative(b))},
                         {"upstairs_size", r.upstairs.blocks[b].size()},
                         {"downstairs_block", r.pairing[b]}});
    return {{"group_order", g.order()},
            {"quotient_order", r.quotient_order},
            {"upstairs_orbits", r.upstairs.size()},
            {"downstairs_orbits", r.downstairs.size()},
            {"bijection", pairs},
            {"ok", true}};
}

}  // namespace bk
