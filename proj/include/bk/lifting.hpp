#pragma once

// Lifting eigenvalues from <omega> in k' to roots of unity in Q(zeta_m).

#include <map>

#include "bk/cyclotomic.hpp"
#include "bk/finite_field.hpp"
#include "bk/linalg.hpp"

namespace bk {

/// zeta_m^i where xi = omega^i. Throws NotARoot if xi is not a power of omega.
CycloNum lift_root(const FFElem& xi, const FFElem& omega, int m);

/// i -> dim ker(mat - omega^i I), nonzero entries only. `mat` must have entries
/// in the field of omega and satisfy mat^m = 1. Throws NotSemisimple when the
/// eigenspaces do not fill the space.
std::map<int, int> eigen_multiplicities(const FFMatrix& mat, const FFElem& omega, int m);
std::map<int, int> eigen_multiplicities(const SparseMap<FFElem>& mat, const FFElem& omega, int m);

/// sum_i mult_i zeta_m^i
CycloNum lift_multiplicities(const std::map<int, int>& mult, int m);

}  // namespace bk
