#pragma once

// Built-in example models and their module catalogs.

#include <optional>
#include <string>
#include <vector>

#include "bk/skewgraded.hpp"

namespace bk {

struct ExampleId {
    std::string name;
    std::vector<int> params;

    /// Parses "heisenberg(1,3,3)". Throws BadParams on unknown names or arity.
    static ExampleId parse(const std::string& text);
    std::string str() const;
};

struct CatalogModule {
    std::string name;
    Presentation presentation;
    std::optional<int> cutoff;
};

/// Modules for one rank-harness run.
struct RankCatalog {
    int i = 0;
    std::vector<std::string> modules;
};

struct Catalog {
    std::string example;  // empty for ad-hoc catalogs
    ModelGN model;
    std::vector<CatalogModule> modules;
    std::vector<RankCatalog> rank_catalogs;

    const CatalogModule& module(const std::string& name) const;
};

/// H = C2 acting on F_q^{2r+1} by diag(-1, ..., -1, 1). Requires odd p.
ModelGN heisenberg_model(int r, int p, std::int64_t q);
/// H = C2 acting on F_q by -1. Requires odd p.
ModelGN dihedral_abelian_model(int p, std::int64_t q);
/// S3 on the sum-zero plane of F_q^3.
ModelGN s3_reflection_model(std::int64_t q);
/// C_n with V = 0.
ModelGN cyclic_model(int n, int p, std::int64_t q);
/// C2 x C2 acting on F_q^2 by the two coordinate sign changes. Requires odd p.
ModelGN klein_model(int p, std::int64_t q);
/// C2 acting on F_q^2 by -1. Requires odd p.
ModelGN c2_scalar_model(int p, std::int64_t q);

/// Builds GF(q) after checking q is a power of p.
FieldSpec field_of_order(int p, std::int64_t q);

// Presentations on a model. Relations are written on a single generator in degree `degree`.
Presentation free_presentation(int degree = 0);
/// R/(h - 1 : h generators) = Sym(V)
Presentation sym_presentation(const ModelGN& model, int degree = 0);
/// R/(h - chi(h), x_0, ..., x_{d-1}) for a linear character chi given on generators.
Presentation linear_presentation(const ModelGN& model, const std::vector<int>& chi, int degree = 0);
/// R/(x_0, ..., x_{d-1}) = kH in one degree
Presentation group_algebra_presentation(const ModelGN& model, int degree = 0);
/// Sym(V)/(x_j : j in killed)
Presentation sym_quotient_presentation(const ModelGN& model, const std::vector<int>& killed, int degree = 0);

/// Model plus module catalog for an example id. Throws BadParams.
Catalog example_catalog(const ExampleId& id);
/// Every module of a catalog built over its model.
GradedModule build_module(const ModelGN& model, const CatalogModule& m, const WindowOptions& defaults);

}  // namespace bk
