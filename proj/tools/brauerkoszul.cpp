// brauerkoszul: command-line front end over the bk library.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bk/error.hpp"
#include "bk/io.hpp"
#include "bk/properties.hpp"

using namespace bk;

namespace {

enum Exit { kPass = 0, kUsage = 2, kMath = 3, kResource = 4 };

struct Options {
    std::string input;
    std::string inline_doc;
    std::string example;
    std::string format = "json";
    std::optional<int> cutoff;
    int guard = 4;
    std::uint64_t seed = 1;
    std::size_t max_group_order = FiniteGroup::default_max_order;
    std::optional<int> p;
    std::optional<std::int64_t> q;
    std::optional<int> i;
    std::string module;
    std::string which;
    std::size_t per_property = 40;
};

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::Schema:
        case ErrorCode::BadParams:
        case ErrorCode::DimMismatch:
        case ErrorCode::NonPrime:
            return kUsage;
        case ErrorCode::TooLarge:
        case ErrorCode::NotStabilized:
        case ErrorCode::WindowTooSmall:
            return kResource;
        default:
            return kMath;
    }
}

// ---------------------------------------------------------------------------
// table rendering

bool is_cyclo(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("m") && j.contains("coeffs"); }
bool is_laurent(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("m") && j.contains("terms"); }

std::string compact(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (is_cyclo(j)) return to_string(cyclo_from_json(j));
    if (is_laurent(j)) return to_string(laurent_from_json(j));
    if (j.is_object() && j.contains("text")) return j.at("text").get<std::string>();
    if (j.is_array()) {
        std::string out = "[";
        for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + compact(j[k]);
        return out + "]";
    }
    return j.dump();
}

bool is_leaf(const Json& v) {
    if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const Json& x) { return is_leaf(x); });
    return !v.is_object() || is_cyclo(v) || is_laurent(v) || v.contains("text");
}

bool is_flat(const Json& j) {
    if (!j.is_object()) return false;
    for (const auto& [k, v] : j.items())
        if (!is_leaf(v)) return false;
    return true;
}

void render(std::ostream& os, const Json& j, const std::string& indent);

void render_rows(std::ostream& os, const Json& rows, const std::string& indent) {
    std::vector<std::string> cols;
    for (const auto& row : rows)
        for (const auto& [k, v] : row.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : cols) width.push_back(c.size());
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            line.push_back(row.contains(cols[c]) ? compact(row.at(cols[c])) : "");
            width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        os << indent;
        for (std::size_t c = 0; c < line.size(); ++c) os << line[c] << std::string(width[c] - line[c].size() + 2, ' ');
        os << "\n";
    };
    emit(cols);
    for (const auto& line : cells) emit(line);
}

void render(std::ostream& os, const Json& j, const std::string& indent) {
    if (!j.is_object()) {
        os << indent << compact(j) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        const bool rows = v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& x) { return is_flat(x); });
        if (rows) {
            os << indent << k << ":\n";
            render_rows(os, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << indent << k << ":\n";
            for (const auto& x : v) {
                render(os, x, indent + "  ");
                os << "\n";
            }
        } else if (!is_leaf(v)) {
            os << indent << k << ":\n";
            render(os, v, indent + "  ");
        } else {
            os << indent << k << ": " << compact(v) << "\n";
        }
    }
}

void emit(const Options& opt, const Json& out) {
    if (opt.format == "table") render(std::cout, out, "");
    else std::cout << out.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// inputs

std::optional<Json> load(const Options& opt) {
    const int given = !opt.input.empty() + !opt.inline_doc.empty() + !opt.example.empty();
    require(given <= 1, ErrorCode::Schema, "give at most one of --input, --inline, --example");
    if (!opt.input.empty()) {
        std::ifstream in(opt.input);
        require(in.good(), ErrorCode::Schema, "cannot read " + opt.input);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_json(ss.str());
    }
    if (!opt.inline_doc.empty()) return parse_json(opt.inline_doc);
    if (!opt.example.empty()) return catalog_to_json(example_catalog(ExampleId::parse(opt.example)));
    return std::nullopt;
}

Json require_doc(const Options& opt) {
    auto doc = load(opt);
    require(doc.has_value(), ErrorCode::Schema, "an input document is required (--input, --inline or --example)");
    return *doc;
}

/// Model from a representation, module or catalog document.
ModelGN model_of(const Json& doc, const Options& opt) {
    require(doc.is_object(), ErrorCode::Schema, "expected an object");
    if (doc.contains("model")) return model_from_json(doc.at("model"), opt.max_group_order);
    return model_from_json(doc, opt.max_group_order);
}

Catalog catalog_of(const Json& doc, const Options& opt) {
    Catalog c = modules_from_json(doc, opt.max_group_order);
    if (!opt.module.empty()) {
        const CatalogModule m = c.module(opt.module);
        c.modules = {m};
        c.rank_catalogs.clear();
    }
    return c;
}

struct Analyzed {
    GradedModule module;
    ModuleAnalysis analysis;
};

class Workspace {
   public:
    Workspace(Catalog cat, const Options& opt) : cat_(std::move(cat)), opt_(opt) {}

    const Catalog& catalog() const { return cat_; }
    const ModelGN& model() const { return cat_.model; }

    const Analyzed& get(const std::string& name) {
        auto it = cache_.find(name);
        if (it != cache_.end()) return it->second;
        WindowOptions w;
        w.guard = opt_.guard;
        CatalogModule m = cat_.module(name);
        if (opt_.cutoff) m.cutoff = opt_.cutoff;
        GradedModule gm = build_module(cat_.model, m, w);
        ModuleAnalysis a = analyze(gm, opt_.guard);
        return cache_.emplace(name, Analyzed{std::move(gm), std::move(a)}).first->second;
    }

   private:
    Catalog cat_;
    const Options& opt_;
    std::map<std::string, Analyzed> cache_;
};

// ---------------------------------------------------------------------------
// commands

int cmd_orbits(const Options& opt) {
    const Json doc = require_doc(opt);
    GroupPtr g;
    int p = 0;
    std::int64_t q = 0;
    if (doc.contains("points")) {
        g = group_from_json(doc, opt.max_group_order);
    } else if (doc.contains("field") || doc.contains("model")) {
        const ModelGN model = model_of(doc, opt);
        g = model.H;
        p = model.p;
        q = model.q;
    } else {
        check_keys(doc, {"group", "p", "q"}, {}, "orbit job");
        g = group_from_json(doc.at("group"), opt.max_group_order);
        p = doc.at("p").get<int>();
        q = doc.at("q").get<std::int64_t>();
    }
    if (opt.p) p = *opt.p;
    if (opt.q) q = *opt.q;
    require(p > 0 && q > 0, ErrorCode::Schema, "orbits needs p and q (flags --p and --q, or a field in the document)");
    require(is_prime(p), ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    Json out = {{"p", p}, {"q", q}, {"m", galois_data(*g, p, q).m}};
    out.update(orbits_to_json(*g, galois_orbits(*g, p, q)));
    emit(opt, out);
    return kPass;
}

int cmd_brauer(const Options& opt) {
    const Json doc = require_doc(opt);
    const Rep rep = doc.contains("model") ? model_of(doc, opt).V : rep_from_json(doc, opt.max_group_order);
    const BrauerChar chi = brauer_character(rep, rep.field().p());
    Json out = {{"dim", rep.dim()}};
    out.update(brauer_to_json(chi, galois_orbits(*rep.group(), rep.field().p(), rep.field().q())));
    emit(opt, out);
    return kPass;
}

int cmd_psi(const Options& opt) {
    emit(opt, psi_to_json(model_of(require_doc(opt), opt)));
    return kPass;
}

template <class F>
int per_module(const Options& opt, F report) {
    Workspace ws(catalog_of(require_doc(opt), opt), opt);
    Json mods = Json::array();
    for (const auto& m : ws.catalog().modules) {
        const Analyzed& a = ws.get(m.name);
        Json entry = {{"name", m.name}};
        entry.update(report(a));
        mods.push_back(std::move(entry));
    }
    emit(opt, {{"modules", mods}});
    return kPass;
}

int cmd_tor(const Options& opt) {
    return per_module(opt, [](const Analyzed& a) {
        return tor_to_json(a.analysis.tor, a.module.model(), a.analysis.chars.orbits);
    });
}

int cmd_zeta(const Options& opt) {
    return per_module(opt, [](const Analyzed& a) { return zeta_to_json(a.analysis, a.module.model()); });
}

int cmd_rho(const Options& opt) {
    return per_module(opt, [](const Analyzed& a) { return rho_to_json(a.analysis, a.module.model()); });
}

Json rank_reports(Workspace& ws, const Options& opt, bool& ok) {
    std::vector<RankCatalog> runs = ws.catalog().rank_catalogs;
    if (opt.i) {
        // every module that qualifies for F_i
        RankCatalog rc{*opt.i, {}};
        for (const auto& m : ws.catalog().modules)
            if (ws.get(m.name).analysis.dimension <= *opt.i) rc.modules.push_back(m.name);
        runs = {rc};
    }
    require(!runs.empty(), ErrorCode::Schema, "no rank catalogs in the document; pass --i");
    Json out = Json::array();
    for (const auto& rc : runs) {
        std::vector<const ModuleAnalysis*> analyses;
        for (const auto& name : rc.modules) analyses.push_back(&ws.get(name).analysis);
        const RankReport r = rank_harness(ws.model(), analyses, rc.i);
        ok = ok && r.ok;
        out.push_back(rank_to_json(r, ws.model(), rc.modules, ws.model().orbits()));
    }
    return out;
}

int cmd_rank(const Options& opt) {
    Workspace ws(catalog_of(require_doc(opt), opt), opt);
    bool ok = true;
    Json reports = rank_reports(ws, opt, ok);
    emit(opt, {{"reports", reports}, {"ok", ok}});
    return ok ? kPass : kMath;
}

int verify_hall(const Options& opt) {
    const auto doc = load(opt);
    if (doc) {
        const HallJob job = hall_job_from_json(*doc, opt.max_group_order);
        emit(opt, hall_to_json(hall_check(*job.group, job.subgroup, job.p, job.q), *job.group));
        return kPass;
    }
    // exhaustive corpus
    Json rows = Json::array();
    std::size_t pairs = 0;
    bool ok = true;
    for (const auto& named : group_catalog(48))
        for (int p : {2, 3}) {
            std::size_t count = 0, failures = 0;
            for (const auto& u : normal_p_subgroups(*named.group, p)) {
                ++count;
                try {
                    hall_check(*named.group, u, p, p);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::BijectionFailure) throw;
                    ++failures;
                }
            }
            pairs += count;
            ok = ok && failures == 0;
            rows.push_back({{"group", named.name}, {"order", named.group->order()}, {"p", p}, {"normal_p_subgroups", count}, {"failures", failures}});
        }
    emit(opt, {{"corpus", rows}, {"pairs", pairs}, {"ok", ok}});
    return ok ? kPass : kMath;
}

int verify_properties(const Options& opt) {
    const PropertyReport r = run_properties(opt.seed, opt.per_property);
    Json rows = Json::array();
    for (const auto& x : r.results)
        rows.push_back({{"suite", x.suite}, {"name", x.name}, {"instances", x.instances}, {"failures", x.failures}, {"first_failure", x.first_failure}});
    emit(opt, {{"seed", r.seed},
               {"exactnum_instances", r.instances("exactnum")},
               {"groups_instances", r.instances("groups")},
               {"results", rows},
               {"ok", r.ok()}});
    return r.ok() ? kPass : kMath;
}

int cmd_verify(const Options& opt) {
    if (opt.which == "hall") return verify_hall(opt);
    if (opt.which == "properties") return verify_properties(opt);
    Workspace ws(catalog_of(require_doc(opt), opt), opt);
    bool ok = true;
    Json out = {{"which", opt.which}};
    if (!ws.catalog().example.empty()) out["example"] = ws.catalog().example;
    if (opt.which == "rank_bound") {
        out["reports"] = rank_reports(ws, opt, ok);
    } else {
        Json mods = Json::array();
        for (const auto& m : ws.catalog().modules) {
            const Analyzed& a = ws.get(m.name);
            const ModelGN& model = a.module.model();
            Json entry = {{"name", m.name}, {"dimension", a.analysis.dimension}};
            if (opt.which == "vanishing") {
                const VanishingReport r = vanishing_check(a.module, a.analysis);
                ok = ok && r.ok;
                entry["report"] = vanishing_to_json(r, model);
            } else {
                Json reports = Json::array();
                for (std::size_t b = 0; b < a.analysis.chars.orbits.size(); ++b) {
                    if (opt.which == "key_formula") {
                        const KeyFormulaReport r = verify_key_formula(a.module, a.analysis, b);
                        ok = ok && r.ok;
                        reports.push_back(key_formula_to_json(r, model));
                    } else {
                        const MainFormulaReport r = verify_main_formula(a.module, a.analysis, b);
                        ok = ok && r.ok;
                        reports.push_back(main_formula_to_json(r, model));
                    }
                }
                entry["reports"] = reports;
            }
            mods.push_back(std::move(entry));
        }
        out["modules"] = mods;
    }
    out["ok"] = ok;
    emit(opt, out);
    return ok ? kPass : kMath;
}

int cmd_example(const Options& opt, const std::string& id) {
    emit(opt, catalog_to_json(example_catalog(ExampleId::parse(id))));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Brauer characters, Galois orbits and Koszul-homology Euler characteristics over Sym(V)#H"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--input", opt.input, "Input document path");
    app.add_option("--inline", opt.inline_doc, "Input document as a JSON string");
    app.add_option("--example", opt.example, "Use a built-in example catalog, e.g. heisenberg(1,3,3)");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--cutoff", opt.cutoff, "Degree window length D")->check(CLI::NonNegativeNumber);
    app.add_option("--guard", opt.guard, "Guard margin for rational reconstruction")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", opt.seed, "Seed for randomized property corpora");
    app.add_option("--max-group-order", opt.max_group_order, "Refuse groups larger than this");

    auto* orbits = app.add_subcommand("orbits", "Galois orbits on p-regular elements");
    orbits->add_option("--p", opt.p, "Characteristic");
    orbits->add_option("--q", opt.q, "Field order");
    app.add_subcommand("brauer", "Brauer character of a representation");
    app.add_subcommand("psi", "Psi(g), centralizer dimensions and S_i counts of a model");
    for (auto* sub : {app.add_subcommand("tor", "Graded Tor with H-action"), app.add_subcommand("zeta", "Graded Brauer characters and their rational forms"),
                      app.add_subcommand("rho", "rho[M](g) per orbit")})
        sub->add_option("--module", opt.module, "Restrict a catalog to one module");
    auto* verify = app.add_subcommand("verify", "Check an identity and report both sides");
    verify->add_option("which", opt.which, "Identity to check")
        ->required()
        ->check(CLI::IsMember({"key_formula", "main_formula", "vanishing", "rank_bound", "hall", "properties"}));
    verify->add_option("--module", opt.module, "Restrict a catalog to one module");
    verify->add_option("--i", opt.i, "Rank harness level (all modules with d(M) <= i)");
    verify->add_option("--per-property", opt.per_property, "Instances per property");
    std::string example_id;
    auto* example = app.add_subcommand("example", "Emit a built-in model and module catalog");
    example->add_option("id", example_id, "heisenberg(r,p,q) | dihedral_abelian(p,q) | s3_reflection(q) | cyclic(n,p,q)")->required();
    auto* rank = app.add_subcommand("rank", "Rank of rho-values against the S_i orbit bound");
    rank->add_option("--i", opt.i, "Use all modules with d(M) <= i");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << Json{{"error", "Usage"}, {"message", e.what()}}.dump(2) << "\n";
        app.exit(e);
        return kUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "orbits") return cmd_orbits(opt);
        if (cmd == "brauer") return cmd_brauer(opt);
        if (cmd == "psi") return cmd_psi(opt);
        if (cmd == "tor") return cmd_tor(opt);
        if (cmd == "zeta") return cmd_zeta(opt);
        if (cmd == "rho") return cmd_rho(opt);
        if (cmd == "verify") return cmd_verify(opt);
        if (cmd == "example") return cmd_example(opt, example_id);
        if (cmd == "rank") return cmd_rank(opt);
    } catch (const Error& e) {
        std::cout << Json{{"error", std::string(error_name(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return exit_code(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cout << Json{{"error", "Schema"}, {"message", e.what()}}.dump(2) << "\n";
        std::cerr << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
