// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "bk/error.hpp"
#include "bk/fixtures.hpp"
#include "bk/io.hpp"

using namespace bk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

// ---------------------------------------------------------------------------
// Shared catalog of (model, modules) pairs

struct Entry {
    std::string label;
    ModelGN model;
    std::vector<CatalogModule> modules;
    std::vector<RankCatalog> rank_catalogs;
};

CatalogModule named(std::string name, Presentation pres) { return {std::move(name), std::move(pres), std::nullopt}; }

std::vector<CatalogModule> basic_modules(const ModelGN& model) {
    const std::vector<int> trivial(model.H->generators().size(), 1);
    return {named("R", free_presentation()), named("R[1]", free_presentation(-1)), named("Sym(V)", sym_presentation(model)),
            named("k", linear_presentation(model, trivial)), named("kH", group_algebra_presentation(model))};
}

Entry from_example(const std::string& id) {
    Catalog c = example_catalog(ExampleId::parse(id));
    return {c.example, c.model, c.modules, c.rank_catalogs};
}

ModelGN c2_swap_f2() {
    const FieldSpec f2 = make_field(2, 1);
    FFMatrix swap(2, 2);
    swap << f2.zero(), f2.one(), f2.one(), f2.zero();
    return ModelGN::make(Rep::make(cyclic_group(2), f2, {swap}));
}

std::vector<Entry> build_catalog() {
    std::vector<Entry> out;
    out.push_back(from_example("heisenberg(1,3,3)"));
    out.push_back(from_example("dihedral_abelian(3,3)"));
    out.push_back(from_example("s3_reflection(3)"));
    out.push_back(from_example("s3_reflection(2)"));
    out.push_back(from_example("s3_reflection(4)"));

    {
        Entry e{"c2_scalar(3,3)", c2_scalar_model(3, 3), {}, {}};
        e.modules = basic_modules(e.model);
        e.modules.push_back(named("k_sign", linear_presentation(e.model, {-1})));
        e.rank_catalogs.push_back({2, {"R", "Sym(V)", "k"}});
        out.push_back(std::move(e));
    }
    {
        Entry e{"klein(3,3)", klein_model(3, 3), {}, {}};
        e.modules = basic_modules(e.model);
        e.modules.push_back(named("k_sign", linear_presentation(e.model, {-1, 1})));
        e.modules.push_back(named("Sym(V)/(x_0)", sym_quotient_presentation(e.model, {0})));
        out.push_back(std::move(e));
    }
    {
        Entry e{"c2_swap(2,2)", c2_swap_f2(), {}, {}};
        e.modules = basic_modules(e.model);
        // e0 + e1 is fixed by the swap
        Presentation pres = sym_presentation(e.model);
        const FieldSpec k = e.model.V.field();
        pres.relations.push_back({{{0, 0, {1, 0}, k.one()}, {0, 0, {0, 1}, k.one()}}});
        e.modules.push_back(named("Sym(V)/(z)", std::move(pres)));
        e.rank_catalogs.push_back({2, {"R", "Sym(V)", "k"}});
        out.push_back(std::move(e));
    }
    return out;
}

struct Built {
    std::string name;
    GradedModule module;
    ModuleAnalysis analysis;
};

struct BuiltEntry {
    const Entry* entry;
    std::vector<Built> modules;

    const Built& get(const std::string& name) const {
        for (const auto& b : modules)
            if (b.name == name) return b;
        fail(ErrorCode::Schema, "no module " + name);
    }
};

std::vector<BuiltEntry> analyze_catalog(const std::vector<Entry>& cat) {
    std::vector<BuiltEntry> out;
    for (const auto& e : cat) {
        BuiltEntry be{&e, {}};
        for (const auto& cm : e.modules) {
            GradedModule m = build_module(e.model, cm, {});
            ModuleAnalysis a = analyze(m);
            be.modules.push_back({cm.name, std::move(m), std::move(a)});
        }
        out.push_back(std::move(be));
    }
    return out;
}

std::string at(const BuiltEntry& e, const Built& b) { return e.entry->label + " " + b.name; }

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    const auto t0 = Clock::now();
    for (int r : {1, 2, 3})
        for (int p : {3, 5}) {
            const ModelGN model = heisenberg_model(r, p, p);
            const std::string tag = "r=" + std::to_string(r) + " p=" + std::to_string(p);
            const std::size_t g = model.H->generator_element(0);
            const LaurentPoly one_plus_t(1, {{0, CycloNum(1)}, {1, CycloNum(1)}});
            LaurentPoly expected = LaurentPoly::one_minus_t_pow(1, 1, 1);
            for (int i = 0; i < 2 * r; ++i) expected *= one_plus_t;
            o.expect(psi(model, g) == expected, tag + ": psi(g)");
            o.expect(centralizer_dim(model, g) == 1, tag + ": centralizer_dim(g)");
            o.expect(centralizer_dim(model, model.H->identity()) == 2 * r + 1, tag + ": centralizer_dim(1)");
            for (int i = 0; i <= 2 * r + 1; ++i) {
                const std::size_t want = i == 0 ? 0 : (i <= 2 * r ? 1 : 2);
                o.expect(s_filtration(model, i).count() == want, tag + ": s_filtration count at i=" + std::to_string(i));
            }
            o.expect(model.orbits().size() == 2, tag + ": orbit count");
        }
    const double dt = seconds_since(t0);
    o.expect(dt < 1.0, "runtime " + std::to_string(dt) + " s");
    if (o.ok) o.detail = "6 models, " + std::to_string(dt) + " s";
    return o;
}

Outcome formula_suite(const std::vector<BuiltEntry>& built, bool key, double seconds) {
    Outcome o;
    std::size_t triples = 0;
    for (const auto& e : built)
        for (const auto& b : e.modules)
            for (std::size_t orbit = 0; orbit < b.analysis.rho.size(); ++orbit) {
                ++triples;
                const bool ok = key ? verify_key_formula(b.module, b.analysis, orbit).ok
                                    : verify_main_formula(b.module, b.analysis, orbit).ok;
                o.expect(ok, at(e, b) + " orbit " + std::to_string(orbit));
            }
    o.expect(triples >= 12, "only " + std::to_string(triples) + " triples");
    if (!key) o.expect(seconds < 60.0, "runtime " + std::to_string(seconds) + " s");
    if (o.ok) o.detail = std::to_string(triples) + " (model, module, g) triples over " + std::to_string(built.size()) + " models";
    return o;
}

Outcome criterion4(const std::vector<BuiltEntry>& built) {
    Outcome o;
    std::size_t forced = 0;
    for (const auto& e : built)
        for (const auto& b : e.modules) {
            const VanishingReport r = vanishing_check(b.module, b.analysis);
            o.expect(r.ok, at(e, b));
            for (const auto& entry : r.entries) forced += entry.forced;
        }
    for (int r : {1, 2}) {
        const ModelGN model = heisenberg_model(r, 3, 3);
        const ModuleAnalysis a = analyze(module_from_presentation(model, sym_quotient_presentation(model, {2 * r})));
        for (std::size_t b = 0; b < a.rho.size(); ++b)
            o.expect(a.rho[b].is_zero(), "heisenberg r=" + std::to_string(r) + " Sym(V/z) orbit " + std::to_string(b));
    }
    if (o.ok) o.detail = std::to_string(forced) + " forced zeros, Sym(V/z) vanishes for r = 1, 2";
    return o;
}

RankReport run_rank(const BuiltEntry& e, const RankCatalog& rc) {
    std::vector<const ModuleAnalysis*> ptrs;
    for (const auto& n : rc.modules) ptrs.push_back(&e.get(n).analysis);
    return rank_harness(e.entry->model, ptrs, rc.i);
}

Outcome criterion5(const std::vector<BuiltEntry>& built) {
    Outcome o;
    std::size_t runs = 0, equalities = 0;
    for (const auto& e : built)
        for (const auto& rc : e.entry->rank_catalogs) {
            const RankReport r = run_rank(e, rc);
            ++runs;
            o.expect(r.ok && r.rank <= r.bound, e.entry->label + " i=" + std::to_string(rc.i) + " bound violated");
            const std::string& label = e.entry->label;
            const bool c2_model = e.entry->model.H->order() == 2;
            if (label == "dihedral_abelian(3,3)" && rc.i == 0) {
                o.expect(r.rank == 1 && r.bound == 1, "dihedral i=0 rank " + std::to_string(r.rank));
                ++equalities;
            }
            if (c2_model && rc.i == e.entry->model.d()) {
                o.expect(r.rank == r.bound, label + " i=d rank " + std::to_string(r.rank) + " < " + std::to_string(r.bound));
                ++equalities;
            }
        }
    for (int r : {1, 2}) {
        const Catalog cat = example_catalog(ExampleId::parse("heisenberg(" + std::to_string(r) + ",3,3)"));
        const RankCatalog& rc = cat.rank_catalogs.front();
        std::vector<ModuleAnalysis> as;
        for (const auto& n : rc.modules) as.push_back(analyze(build_module(cat.model, cat.module(n), {})));
        std::vector<const ModuleAnalysis*> ptrs;
        for (const auto& a : as) ptrs.push_back(&a);
        const RankReport rep = rank_harness(cat.model, ptrs, rc.i);
        ++runs;
        o.expect(rep.rank == 0 && rep.bound == 1, "heisenberg r=" + std::to_string(r) + " rank " + std::to_string(rep.rank) +
                                                      " bound " + std::to_string(rep.bound));
    }
    o.expect(equalities >= 3, "too few equality cases");
    if (o.ok) o.detail = std::to_string(runs) + " runs, " + std::to_string(equalities) + " equalities, heisenberg 0 < 1";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator(BK_FIXTURE_DIR "/berman_witt")) files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::string summary;
    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        const Json doc = parse_json(ss.str());
        const FieldSpec k = field_from_json(doc.at("field"));
        const GroupPtr group = group_from_json(doc.at("group"));
        std::vector<BrauerChar> chars;
        for (const auto& rep : doc.at("catalog")) {
            const Json rdoc = {{"group", doc.at("group")}, {"field", doc.at("field")}, {"matrices", rep.at("matrices")}};
            chars.push_back(brauer_character(rep_from_json(rdoc), k.p()));
        }
        const OrbitPartition orbits = galois_orbits(*group, k.p(), k.q());
        const int rank = char_span_rank(chars, orbits);
        const int expected = doc.at("expected_rank").get<int>();
        const std::string name = doc.at("name").get<std::string>();
        summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(rank) + "/" + std::to_string(orbits.size());
        o.expect(rank == expected && static_cast<std::size_t>(rank) == orbits.size(),
                 name + ": expected " + std::to_string(expected) + ", rank " + std::to_string(rank) + ", orbits " +
                     std::to_string(orbits.size()));
    }
    o.expect(files.size() == 6, "expected 6 fixture files");
    o.detail = o.ok ? summary : o.detail + " [" + summary + "]";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& named : group_catalog(48))
        for (int p : {2, 3})
            for (const Subgroup& u : normal_p_subgroups(*named.group, p)) {
                ++pairs;
                try {
                    hall_check(*named.group, u, p, p);
                } catch (const Error& e) {
                    o.expect(false, named.name + " p=" + std::to_string(p) + ": " + e.what());
                }
            }
    if (o.ok) o.detail = std::to_string(pairs) + " (G, U, p) cases";
    return o;
}

Outcome criterion8(const std::vector<BuiltEntry>& built) {
    Outcome o;
    const int guard = WindowOptions{}.guard;
    std::size_t functions = 0;
    for (const auto& e : built)
        for (const auto& b : e.modules)
            for (std::size_t orbit = 0; orbit < b.analysis.rational.size(); ++orbit) {
                ++functions;
                const std::string where = at(e, b) + " orbit " + std::to_string(orbit);
                const RatFuncT& f = b.analysis.rational[orbit].f;
                const bool identity = b.analysis.chars.orbits.representative(orbit) == e.entry->model.H->identity();
                if (identity)
                    o.expect(f.den_exp == b.analysis.dimension, where + ": denominator exponent differs from dimension");
                else
                    o.expect(f.den_exp <= b.analysis.dimension, where + ": denominator exponent above dimension");
                const LaurentPoly& series = b.analysis.zeta[orbit];
                o.expect(f.expand(b.module.hi) == series.truncated(b.module.hi), where + ": re-expansion differs");
                const int top_num = f.num.is_zero() ? b.module.lo - 1 : f.num.max_degree();
                o.expect(b.module.hi - top_num >= 2 * guard, where + ": fewer than 2 guard windows checked");
            }
    if (o.ok) o.detail = std::to_string(functions) + " rational functions";
    return o;
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    Run r;
    const std::string cmd = std::string(BK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Outcome criterion9() {
    Outcome o;
    const std::string args = "verify properties --seed 20240611 --format json";
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    o.expect(a.status == 0 && b.status == 0, "exit codes " + std::to_string(a.status) + ", " + std::to_string(b.status));
    o.expect(a.out == b.out, "output differs between runs with the same seed");
    std::size_t ex = 0, gr = 0;
    try {
        const Json doc = parse_json(a.out);
        ex = doc.at("exactnum_instances").get<std::size_t>();
        gr = doc.at("groups_instances").get<std::size_t>();
    } catch (const std::exception& e) {
        o.expect(false, std::string("unreadable report: ") + e.what());
    }
    o.expect(ex >= 200 && gr >= 200, "instances " + std::to_string(ex) + " + " + std::to_string(gr));
    const Run c = run_cli("verify properties --seed 7 --format json");
    o.expect(c.status == 0, "seed 7 exit " + std::to_string(c.status));
    if (o.ok) o.detail = std::to_string(ex) + " exactnum + " + std::to_string(gr) + " groups instances, repeatable";
    return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    std::vector<Entry> catalog;
    std::vector<BuiltEntry> built;
    double build_seconds = 0;
    std::string build_error;
    try {
        catalog = build_catalog();
        const auto tb = Clock::now();
        built = analyze_catalog(catalog);
        build_seconds = seconds_since(tb);
    } catch (const std::exception& e) {
        build_error = e.what();
    }
    auto needs_catalog = [&](std::function<Outcome()> f) {
        return [f, &build_error]() -> Outcome {
            if (!build_error.empty()) return {false, "catalog failed: " + build_error};
            return f();
        };
    };

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1},
        {2, needs_catalog([&] { return formula_suite(built, false, build_seconds); })},
        {3, needs_catalog([&] { return formula_suite(built, true, build_seconds); })},
        {4, needs_catalog([&] { return criterion4(built); })},
        {5, needs_catalog([&] { return criterion5(built); })},
        {6, criterion6},
        {7, criterion7},
        {8, needs_catalog([&] { return criterion8(built); })},
        {9, criterion9},
    };
    int failures = 0;
    for (const auto& [n, f] : criteria) {
        const auto tc = Clock::now();
        const Outcome o = guarded(f);
        failures += !o.ok;
        std::cout << "CRITERION " << n << ": " << (o.ok ? "PASS" : "FAIL") << " - " << o.detail << " ("
                  << std::fixed << std::setprecision(2) << seconds_since(tc) << " s)" << std::endl;
    }
    std::cout << "catalog analysis " << build_seconds << " s, total " << seconds_since(t0) << " s, " << failures << " failing" << std::endl;
    return failures == 0 ? 0 : 1;
}
