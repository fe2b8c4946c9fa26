#pragma once

// Finite-dimensional commutative F_p-algebras with finite group actions,
// stored by dense structure constants. Elements are row vectors over F_p in
// the chosen basis; all maps act on the right.

#include "wittlift/group.hpp"
#include "wittlift/zpmod.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace wittlift {

class FiniteAlgebra {
 public:
  static FiniteAlgebra prime_field(Int p);
  // F_p[x]/(poly), poly monic given by coefficients c_0..c_deg; must be
  // irreducible (checked exhaustively).
  static FiniteAlgebra finite_field(Int p, std::vector<Int> poly);
  static FiniteAlgebra truncated_poly(Int p, int k);  // F_p[x]/(x^k)
  static FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors);
  static FiniteAlgebra from_structure(Int p, MatZ mult, RowZ unit);

  Int p() const { return p_; }
  int dim() const { return d_; }
  Mod base_mod() const { return Mod::make(p_); }
  const std::vector<int>& factor_dims() const { return factor_dims_; }

  RowZ zero() const { return RowZ::Zero(d_); }
  RowZ one() const { return one_; }
  RowZ basis(int i) const;
  RowZ mul(const RowZ& a, const RowZ& b) const;
  RowZ add(const RowZ& a, const RowZ& b) const;
  RowZ neg(const RowZ& a) const;
  RowZ pow(const RowZ& a, Int e) const;
  MatZ mul_matrix(const RowZ& a) const;  // x -> x * M = x*a
  std::optional<RowZ> inverse(const RowZ& a) const;
  bool is_unit(const RowZ& a) const { return inverse(a).has_value(); }

  Int element_count() const;
  std::vector<RowZ> elements() const;
  Int encode(const RowZ& a) const;
  RowZ decode(Int code) const;

  // The p-power map as an F_p-linear matrix (row i = basis(i)^p).
  MatZ frobenius_matrix() const;
  bool is_perfect() const;
  MatZ nilradical_basis() const;
  // (k, m): smallest k with N^k = 0 and smallest m with p^m >= k.
  std::pair<int, int> nilpotency_data() const;

 private:
  Int p_ = 2;
  int d_ = 1;
  MatZ mult_;  // (d*d) x d, row i*d+j = basis_i * basis_j
  RowZ one_;
  std::vector<int> factor_dims_;  // product decomposition used at construction
  void validate() const;
};

// Group action on an algebra by ring automorphisms: act(g, x) = x * mats[g].
struct AlgebraAction {
  FiniteGroup group;
  std::vector<MatZ> mats;

  RowZ act(const FiniteAlgebra& a, int g, const RowZ& x) const;
  void validate(const FiniteAlgebra& a) const;
  AlgebraAction restricted(const Subgroup& h) const;

  static AlgebraAction trivial(const FiniteGroup& g, const FiniteAlgebra& a);
  // Generator of a cyclic group acts as Frob^t.
  static AlgebraAction cyclic_frobenius(const FiniteGroup& cyclic, const FiniteAlgebra& a,
                                        int t);
  // For product algebras: per group element a permutation of the factors and
  // a Frobenius power applied inside each factor it moves.
  static AlgebraAction product_action(const FiniteGroup& g, const FiniteAlgebra& prod,
                                      const std::vector<std::vector<int>>& perms,
                                      const std::vector<std::vector<int>>& frob_powers);
};

struct SubAlgebra {
  FiniteAlgebra algebra;
  MatZ inclusion;  // algebra.dim() x ambient.dim(), rows = basis in ambient coords
  RowZ project(const FiniteAlgebra& ambient, const RowZ& x) const;  // solve against rows
};

SubAlgebra fixed_subring(const FiniteAlgebra& a, const AlgebraAction& action,
                         const std::vector<int>& subgroup_elements);
SubAlgebra fixed_subring(const FiniteAlgebra& a, const AlgebraAction& action);
SubAlgebra subalgebra_generated(const FiniteAlgebra& a, const MatZ& seed_rows);

// prod_{g in G/H} g.a over left-coset representatives
RowZ norm_element(const FiniteAlgebra& a, const AlgebraAction& action, const RowZ& x,
                  const std::vector<int>& h_elements);

// A_red = A/N split into residue fields, with the natural map A -> P(A).
struct ResidueDecomposition {
  MatZ nilradical;
  FiniteAlgebra reduced;
  MatZ to_reduced;    // d x d_red
  MatZ from_reduced;  // d_red x d (one choice of representatives)
  std::vector<RowZ> idempotents;             // primitive, in reduced coords
  std::vector<FiniteAlgebra> factors;        // residue fields k(x)
  std::vector<MatZ> factor_basis;            // d_i x d_red, basis of k_i inside A_red
  std::vector<MatZ> to_factor;               // d_red x d_i
  std::vector<std::vector<int>> factor_perm;  // per g (when built with an action)

  // the natural map A -> P(A) in concatenated factor coordinates
  RowZ to_product(const FiniteAlgebra& a, const RowZ& x) const;
  int product_dim() const;
};

ResidueDecomposition residue_decomposition(const FiniteAlgebra& a);
ResidueDecomposition residue_decomposition(const FiniteAlgebra& a,
                                           const AlgebraAction& action);

struct InducedAlgebra {
  FiniteAlgebra algebra;
  AlgebraAction action;  // of the big group
  RightCosets cosets;
};
InducedAlgebra induced_algebra(const FiniteGroup& g, const Subgroup& h,
                               const FiniteAlgebra& a, const AlgebraAction& h_action);

}  // namespace wittlift
