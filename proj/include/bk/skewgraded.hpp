#pragma once

// Graded right modules over R = Sym(V)#H truncated to a degree window, their
// Koszul complexes and Tor with H-action, graded Brauer characters, and the
// verifiers built on them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bk/linalg.hpp"
#include "bk/ratfunc.hpp"
#include "bk/reps.hpp"

namespace bk {

using SparseFF = SparseMap<FFElem>;
using SparseVecFF = SparseVec<FFElem>;

/// R = Sym(V)#H through a fixed degree. R_n has basis h x^a, h in H, |a| = n,
/// with monomials in a deterministic order and (h s)(g s') = (hg)(s^g s').
class SkewAlgebra {
   public:
    static std::shared_ptr<const SkewAlgebra> build(ModelGN model, int top_degree);

    const ModelGN& model() const { return model_; }
    int d() const { return model_.d(); }
    int top_degree() const { return top_; }
    std::size_t group_order() const { return model_.H->order(); }

    /// Number of monomials of degree n (0 for n < 0).
    std::size_t monomials(int n) const;
    std::size_t dim(int n) const { return group_order() * monomials(n); }
    const std::vector<int>& exponents(int n, std::uint32_t idx) const { return exps_.at(static_cast<std::size_t>(n))[idx]; }
    std::uint32_t monomial_index(const std::vector<int>& exps) const;
    /// Index of x^a * x_j in degree n + 1.
    std::uint32_t times(int n, std::uint32_t idx, int j) const { return up_[static_cast<std::size_t>(n)][idx * static_cast<std::size_t>(d()) + static_cast<std::size_t>(j)]; }
    /// (x^a)^g expanded in the degree-n monomial basis.
    const SparseVecFF& sym_image(std::size_t g, int n, std::uint32_t idx) const;

   private:
    SkewAlgebra() = default;
    ModelGN model_;
    int top_ = 0;
    std::vector<std::vector<std::vector<int>>> exps_;
    std::vector<std::map<std::vector<int>, std::uint32_t>> index_;
    std::vector<std::vector<std::uint32_t>> up_;
    std::vector<std::vector<std::vector<SparseVecFF>>> sym_;  // [g][n][idx]
};

using AlgebraPtr = std::shared_ptr<const SkewAlgebra>;

struct RelationTerm {
    std::size_t gen = 0;        // free generator
    std::size_t h = 0;          // group element
    std::vector<int> monomial;  // exponent vector
    FFElem coeff;
};

/// A homogeneous element of the free module on the presentation generators.
struct Relation {
    std::vector<RelationTerm> terms;
};

struct Presentation {
    std::vector<int> generator_degrees;
    std::vector<Relation> relations;
};

struct WindowOptions {
    std::optional<int> cutoff;  // D: the window is [n0, n0 + D]
    int guard = 4;
};

/// Degreewise data of a graded module in the window [lo, hi].
struct GradedModule {
    AlgebraPtr algebra;
    int lo = 0;
    int hi = 0;
    int span = 0;  // presentation degrees above lo
    std::vector<std::size_t> dims;
    std::vector<std::vector<SparseFF>> h_act;     // [n - lo][generator]
    std::vector<std::vector<SparseFF>> v_act;     // [n - lo][j] : M_n -> M_{n+1}, n < hi
    std::vector<std::vector<SparseFF>> elem_act;  // [n - lo][element]
    std::optional<Presentation> presentation;

    std::size_t dim(int n) const { return n < lo || n > hi ? 0 : dims[static_cast<std::size_t>(n - lo)]; }
    const ModelGN& model() const { return algebra->model(); }
    const SparseFF& action(int n, std::size_t element) const { return elem_act[static_cast<std::size_t>(n - lo)][element]; }
    const SparseFF& times(int n, int j) const { return v_act[static_cast<std::size_t>(n - lo)][static_cast<std::size_t>(j)]; }
};

/// Default D for a model and presentation span.
int default_cutoff(const ModelGN& model, int span, int guard);

AlgebraPtr build_algebra(const ModelGN& model, int top_degree);

/// Degreewise quotient of the free module by the submodule the relations
/// generate. Throws WindowTooSmall, BadParams on inhomogeneous relations.
GradedModule module_from_presentation(const ModelGN& model, const Presentation& pres, const WindowOptions& opts = {});
/// A representation placed in one degree with V acting as zero.
GradedModule module_from_rep(const ModelGN& model, const Rep& a, int degree, const WindowOptions& opts = {});
/// M[a]_n = M_{n+a}
GradedModule shifted(const GradedModule& m, int a);

/// Asserts the H-relations, commuting V-actions and the twist law.
void validate_module(const GradedModule& m);

struct KoszulDegree {
    int n = 0;
    std::vector<std::size_t> dims;   // K_j(n), j = 0..d
    std::vector<SparseFF> diffs;     // diffs[j] : K_j(n) -> K_{j-1}(n), j = 1..d (diffs[0] empty)
};

/// K_j(n) = M_{n-j} (x) Lambda^j V with d(m (x) v_J) = sum_l (-1)^l m v_{J_l} (x) v_{J - J_l}.
KoszulDegree koszul_degree(const GradedModule& m, int n);
std::vector<KoszulDegree> koszul_complex(const GradedModule& m);

struct TorPiece {
    int j = 0;
    int n = 0;
    Rep action;  // H acting on Tor_j(M)_n
};

struct TorCertificate {
    int window = 0;          // W
    int zero_from = 0;       // all Tor vanish in [zero_from, hi]
    bool euler_ok = false;   // per-degree Euler characteristics agree
    bool identity_ok = false;
    std::size_t residual = 0;  // mismatched coefficients of the cleared identity
};

struct TorTable {
    int d = 0;
    int lo = 0;
    int hi = 0;
    std::vector<std::vector<std::size_t>> dims;  // [j][n - lo]
    std::vector<TorPiece> pieces;                // nonzero pieces ordered by (j, n)
    TorCertificate certificate;

    /// sum_n phi_{Tor_j(n)}(g) t^n
    LaurentPoly series(int j, std::size_t g, const CharacterContext& ctx) const;
};

/// Graded characters of M: values[n - lo][orbit].
struct DegreeCharacters {
    OrbitPartition orbits;
    std::vector<std::vector<CycloNum>> values;
};

DegreeCharacters degree_characters(const GradedModule& m);

/// Tor via Koszul homology; throws NotStabilized if the certificate fails.
TorTable graded_tor(const GradedModule& m, const DegreeCharacters& chars);
TorTable graded_tor(const GradedModule& m);

LaurentPoly zeta_series(const GradedModule& m, std::size_t g);

struct ZetaRational {
    RatFuncT f;
    int verified_through = 0;  // last degree re-expanded and matched
    int tail = 0;              // verified coefficients above deg num
};

/// Reconstructs num / (1 - t^m)^delta with delta <= d and checks the re-expansion.
ZetaRational zeta_rational(const LaurentPoly& series, const GradedModule& m, int guard);
ZetaRational zeta_rational(const GradedModule& m, std::size_t g, int guard = 4);

int dimension(const GradedModule& m, int guard = 4);

/// Everything the verifiers need, computed once per module.
struct ModuleAnalysis {
    DegreeCharacters chars;
    TorTable tor;
    std::vector<LaurentPoly> zeta;       // per orbit
    std::vector<ZetaRational> rational;  // per orbit
    std::vector<LaurentPoly> psi;        // per orbit
    std::vector<int> centralizer_dims;   // per orbit
    std::vector<CycloNum> rho;           // per orbit
    int dimension = 0;
};

ModuleAnalysis analyze(const GradedModule& m, int guard = 4);

CycloNum rho(const GradedModule& m, std::size_t g);

struct KeyFormulaReport {
    std::size_t element = 0;
    LaurentPoly lhs;  // (sum_j (-1)^j zeta_{Tor_j}(g)) (1 - t^m)^{d(M)}
    LaurentPoly rhs;  // u_g(t) Psi(g)
    bool ok = false;
};

struct MainFormulaReport {
    std::size_t element = 0;
    CycloNum rho;
    CycloNum value;  // (zeta_M(g) Psi(g)) at t = 1
    bool ok = false;
};

struct VanishingEntry {
    std::size_t element = 0;
    int centralizer_dim = 0;
    CycloNum rho;
    bool forced = false;
    bool ok = true;
};

struct VanishingReport {
    int dimension = 0;
    std::vector<VanishingEntry> entries;
    bool ok = true;
};

KeyFormulaReport verify_key_formula(const GradedModule& m, const ModuleAnalysis& a, std::size_t orbit);
MainFormulaReport verify_main_formula(const GradedModule& m, const ModuleAnalysis& a, std::size_t orbit);
VanishingReport vanishing_check(const GradedModule& m, const ModuleAnalysis& a);

struct RankReport {
    int i = 0;
    std::vector<std::vector<CycloNum>> values;  // [module][orbit]
    std::vector<int> dimensions;
    int rank = 0;
    int bound = 0;
    bool ok = false;
    std::vector<std::size_t> witnesses;  // independent modules when rank == bound
};

/// Throws DimensionTooLarge if some module has d(M) > i.
RankReport rank_harness(const ModelGN& model, const std::vector<const ModuleAnalysis*>& modules, int i);

}  // namespace bk
