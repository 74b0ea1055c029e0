#pragma once

// Finite permutation groups: closure, element arithmetic, p-regular parts,
// conjugacy and Galois-powering orbits, quotients and Hall-bijection checks.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bk {

/// Images of 0..n-1. Products act left to right: (a*b)[x] = b[a[x]].
using Perm = std::vector<std::uint32_t>;

std::string cycle_string(const Perm& p);

class FiniteGroup {
   public:
    static constexpr std::size_t default_max_order = 1000000;

    /// Breadth-first closure; identity at index 0, then words in the generators
    /// in shortlex order. Throws TooLarge beyond max_order elements.
    static std::shared_ptr<const FiniteGroup> close(std::size_t n_points, std::vector<Perm> generators,
                                                    std::size_t max_order = default_max_order);

    std::size_t order() const noexcept { return elements_.size(); }
    std::size_t n_points() const noexcept { return n_points_; }
    const std::vector<Perm>& generators() const noexcept { return generators_; }
    std::size_t generator_element(std::size_t i) const { return generator_elements_.at(i); }
    const Perm& element(std::size_t i) const { return elements_.at(i); }
    std::optional<std::size_t> index_of(const Perm& p) const;

    std::size_t identity() const noexcept { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const;
    std::size_t inv(std::size_t a) const { return inverse_[a]; }
    std::size_t pow(std::size_t a, std::int64_t e) const;
    /// x^-1 g x
    std::size_t conj(std::size_t g, std::size_t x) const { return mul(inv(x), mul(g, x)); }
    std::int64_t element_order(std::size_t a) const { return orders_[a]; }
    std::int64_t exponent() const noexcept { return exponent_; }

    /// Generator indices whose product (left to right) is element i.
    const std::vector<std::size_t>& word(std::size_t i) const { return words_[i]; }
    /// BFS parent of a non-identity element and the generator leading to it.
    std::pair<std::size_t, std::size_t> parent(std::size_t i) const { return parents_[i]; }

   private:
    FiniteGroup() = default;
    Perm compose(const Perm& a, const Perm& b) const;

    std::size_t n_points_ = 0;
    std::vector<Perm> generators_;
    std::vector<std::size_t> generator_elements_;
    std::vector<Perm> elements_;
    std::map<Perm, std::size_t> index_;
    std::vector<std::size_t> inverse_;
    std::vector<std::int64_t> orders_;
    std::int64_t exponent_ = 1;
    std::vector<std::vector<std::size_t>> words_;
    std::vector<std::pair<std::size_t, std::size_t>> parents_;
    std::vector<std::uint32_t> table_;  // full multiplication table for small groups
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Sorted element indices of a subgroup.
using Subgroup = std::vector<std::size_t>;

struct RegularDecomposition {
    std::size_t s;  // p-regular part
    std::size_t u;  // p-part
};

RegularDecomposition p_regular_part(const FiniteGroup& g, std::size_t x, int p);
std::vector<std::size_t> p_regular_set(const FiniteGroup& g, int p);

/// p'-part of an integer.
std::int64_t p_prime_part(std::int64_t n, int p);

struct GaloisData {
    int p = 0;
    std::int64_t q = 0;
    int m = 1;                      // p'-part of the group exponent
    std::vector<int> t_powers;      // <q mod m>, sorted
};

GaloisData galois_data(const FiniteGroup& g, int p, std::int64_t q);

struct OrbitPartition {
    std::vector<std::size_t> base;                 // sorted element indices
    std::vector<std::vector<std::size_t>> blocks;  // sorted, ordered by least element
    std::vector<std::size_t> block_of;             // element index -> block, npos off the base

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t representative(std::size_t b) const { return blocks[b].front(); }
    std::size_t size() const { return blocks.size(); }
};

/// Orbits of the p-regular set under conjugation and g -> g^q. Throws
/// BadCharacteristic if q is not a power of p.
OrbitPartition galois_orbits(const FiniteGroup& g, int p, std::int64_t q);
OrbitPartition conjugacy_classes(const FiniteGroup& g);

bool is_prime_power_of(std::int64_t q, int p);

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<std::size_t>& gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& u);
bool is_normal(const FiniteGroup& g, const Subgroup& u);
bool is_p_group(const FiniteGroup& g, const Subgroup& u, int p);

/// All normal p-subgroups, smallest first, ties broken by element lists.
std::vector<Subgroup> normal_p_subgroups(const FiniteGroup& g, int p);

struct Quotient {
    GroupPtr group;                        // G/U acting on the cosets of U
    std::vector<std::size_t> projection;   // element of G -> element of G/U
};

/// Quotient by a normal subgroup. Throws NotNormal.
Quotient quotient(const FiniteGroup& g, const Subgroup& u);

struct HallReport {
    OrbitPartition upstairs;
    OrbitPartition downstairs;
    std::vector<std::size_t> pairing;  // upstairs block -> downstairs block
    std::size_t quotient_order = 0;
};

/// Checks that projection induces a bijection between the orbit sets of G_reg
/// and (G/U)_reg. Throws NotNormal, NotPGroup, BijectionFailure.
HallReport hall_check(const FiniteGroup& g, const Subgroup& u, int p, std::int64_t q);

// ---------------------------------------------------------------------------
// Built-in groups

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);  // order 2n
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
GroupPtr quaternion_group();
GroupPtr elementary_abelian_group(int p, int rank);
GroupPtr special_linear_2_3();
GroupPtr general_linear_2_3();
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Matrix group over Z/p acting on row vectors of (Z/p)^n, as a permutation group.
GroupPtr matrix_group_mod_p(int p, int n, const std::vector<std::vector<int>>& matrices);

struct NamedGroup {
    std::string name;
    GroupPtr group;
};

/// Built-in groups of order at most max_order, in a fixed order.
std::vector<NamedGroup> group_catalog(std::size_t max_order);

}  // namespace bk
