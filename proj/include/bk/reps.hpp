#pragma once

// Matrix representations over k, Brauer characters, the polynomial Psi and the
// centralizer filtration of a finite-level model (H, V).

#include <map>
#include <vector>

#include "bk/cyclotomic.hpp"
#include "bk/finite_field.hpp"
#include "bk/groups.hpp"
#include "bk/laurent.hpp"
#include "bk/linalg.hpp"

namespace bk {

/// k, the splitting field k' = k(omega) for m-th roots of unity, and omega.
struct CharacterContext {
    FieldSpec k;
    FieldSpec kprime;
    FieldEmbedding embed;  // k -> k'
    FFElem omega;
    int m = 1;

    /// k' = GF(q^e) with e the order of q mod m, omega the deterministic root.
    static CharacterContext canonical(const FieldSpec& k, int m);
    /// Context over a bigger field K containing k whose omega is the image of
    /// base.omega under an embedding k' -> K' that agrees with k -> K.
    static CharacterContext compatible(const CharacterContext& base, const FieldSpec& bigger);

    /// Brauer value of a matrix over k of order dividing m.
    CycloNum value(const FFMatrix& a) const;
    CycloNum value(const SparseMap<FFElem>& a) const;
};

class Rep {
   public:
    Rep() = default;
    /// Validates the generator matrices by replaying every Cayley-graph edge.
    /// Throws DimMismatch on shape errors and BadParams when relations fail.
    /// `dim` is needed only when the group has no generators.
    static Rep make(GroupPtr group, FieldSpec field, std::vector<FFMatrix> generators, int dim = -1);

    const GroupPtr& group() const { return group_; }
    const FieldSpec& field() const { return field_; }
    int dim() const { return dim_; }
    const std::vector<FFMatrix>& generators() const { return generators_; }
    const FFMatrix& matrix(std::size_t element) const { return elements_.at(element); }

   private:
    GroupPtr group_;
    FieldSpec field_;
    int dim_ = 0;
    std::vector<FFMatrix> generators_;
    std::vector<FFMatrix> elements_;
};

Rep trivial_rep(GroupPtr group, FieldSpec field, int dim = 1);
Rep tensor(const Rep& a, const Rep& b);
Rep direct_sum(const Rep& a, const Rep& b);
Rep exterior_power(const Rep& a, int j);
/// Induction from a representation of a subgroup; the subgroup's generators
/// must be permutations of the same points as `group`. Throws NotSubgroup.
Rep induce(const Rep& sub, GroupPtr group);

/// j-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int d, int j);
/// Matrix of the induced map on the j-th exterior power (minors, row-vector convention).
FFMatrix exterior_power_matrix(const FFMatrix& a, int j);

struct BrauerChar {
    GroupPtr group;
    int m = 1;
    std::map<std::size_t, CycloNum> values;  // p-regular element -> value

    const CycloNum& at(std::size_t g) const { return values.at(g); }
};

BrauerChar brauer_character(const Rep& a, int p);
BrauerChar brauer_character(const Rep& a, int p, const CharacterContext& ctx);

/// Finite-level model: H acting on V = k^d.
struct ModelGN {
    GroupPtr H;
    Rep V;
    int p = 0;
    std::int64_t q = 0;

    static ModelGN make(Rep v);
    int d() const { return V.dim(); }
    int m() const;
    const CharacterContext& context() const;
    OrbitPartition orbits() const { return galois_orbits(*H, p, q); }

   private:
    std::shared_ptr<const CharacterContext> ctx_;
};

/// sum_j (-t)^j phi_{Lambda^j V}(g)
LaurentPoly psi(const ModelGN& model, std::size_t g);
/// dim ker(V(g) - 1); cross-checked against the multiplicity of t = 1 in Psi(g).
int centralizer_dim(const ModelGN& model, std::size_t g);

struct SFiltration {
    OrbitPartition orbits;
    std::vector<int> centralizer_dims;   // per orbit
    std::vector<std::size_t> selected;   // orbits with centralizer_dim <= i
    std::vector<std::size_t> radical;    // orbits outside S_{d-1}
    std::size_t count() const { return selected.size(); }
};

SFiltration s_filtration(const ModelGN& model, int i);

/// Values on every element of a group; only p-regular entries are meaningful.
struct ClassFunction {
    GroupPtr group;
    std::vector<CycloNum> values;
};

ClassFunction to_class_function(const BrauerChar& chi);
/// Ind(f)(g) = |H|^-1 sum_x f(x g x^-1), f taken as zero off H. Throws NotSubgroup.
ClassFunction induce_class_function(const ClassFunction& f, const Subgroup& h);

/// Rank over Q(zeta_m) of the value matrix on orbit representatives.
int char_span_rank(const std::vector<BrauerChar>& chars, const OrbitPartition& orbits);

}  // namespace bk
