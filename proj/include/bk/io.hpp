#pragma once

// JSON documents: parsing with strict key checks and canonical serialization.
// Parse failures of any kind surface as ErrorCode::Schema.

#include <string>

#include "json.hpp"

#include "bk/fixtures.hpp"

namespace bk {

using Json = nlohmann::ordered_json;

/// Parses text; throws Schema with the parser's message.
Json parse_json(const std::string& text);
/// Rejects keys outside required + optional and missing required keys.
void check_keys(const Json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional,
                const std::string& where);

Json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);
std::string element_label(const FiniteGroup& g, std::size_t x);

Json field_to_json(const FieldSpec& k);
FieldSpec field_from_json(const Json& j);
/// Base-p digit list, low degree first. Parsing also accepts a bare digit for prime fields.
Json ffelem_to_json(const FieldSpec& k, const FFElem& x);
FFElem ffelem_from_json(const FieldSpec& k, const Json& j);

Json rep_to_json(const Rep& a);
Rep rep_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);
Json model_to_json(const ModelGN& model);
ModelGN model_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);

Json cyclo_to_json(const CycloNum& x);
CycloNum cyclo_from_json(const Json& j);
Json laurent_to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j);
Json ratfunc_to_json(const RatFuncT& f);
RatFuncT ratfunc_from_json(const Json& j);

/// Module presentation document, with the model inlined.
struct ModuleDoc {
    ModelGN model;
    CatalogModule module;
};

Json module_to_json(const ModelGN& model, const CatalogModule& m);
ModuleDoc module_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);
Json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);
/// Accepts a catalog or a single module document (wrapped as a one-module catalog).
Catalog modules_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);

struct HallJob {
    GroupPtr group;
    Subgroup subgroup;
    int p = 0;
    std::int64_t q = 0;
};

/// {"group", "subgroup": [generator index | permutation, ...], "p", "q"}
HallJob hall_job_from_json(const Json& j, std::size_t max_order = FiniteGroup::default_max_order);

// Reports
Json orbits_to_json(const FiniteGroup& g, const OrbitPartition& orbits);
Json brauer_to_json(const BrauerChar& chi, const OrbitPartition& orbits);
Json psi_to_json(const ModelGN& model);
Json tor_to_json(const TorTable& tor, const ModelGN& model, const OrbitPartition& orbits);
Json zeta_to_json(const ModuleAnalysis& a, const ModelGN& model);
Json rho_to_json(const ModuleAnalysis& a, const ModelGN& model);
Json key_formula_to_json(const KeyFormulaReport& r, const ModelGN& model);
Json main_formula_to_json(const MainFormulaReport& r, const ModelGN& model);
Json vanishing_to_json(const VanishingReport& r, const ModelGN& model);
Json rank_to_json(const RankReport& r, const ModelGN& model, const std::vector<std::string>& names, const OrbitPartition& orbits);
Json hall_to_json(const HallReport& r, const FiniteGroup& g);

}  // namespace bk
