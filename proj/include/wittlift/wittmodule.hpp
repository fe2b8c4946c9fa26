#pragma once

// The additive group of W_r(A), with the semilinear G-action scaled by a
// power of the cyclotomic character, flattened to a presented module over
// Z/p^ambient. Perfect coefficient algebras get the free Teichmuller-basis
// presentation (coordinates by repeated p-division); non-perfect ones are
// presented on the generators V^j tau(b_i) with relations found by a full
// coefficient sweep.

#include "wittlift/cohomology.hpp"
#include "wittlift/gmodule.hpp"
#include "wittlift/witt.hpp"

#include <memory>
#include <unordered_map>
#include <utility>

namespace wittlift {

class WittModule {
 public:
  WittModule(WittRing ring, AlgebraAction action, Character chi, int twist_power,
             const Mod& ambient, Int enum_limit = 1 << 21);

  const WittRing& ring() const { return ring_; }
  const GModule& gmodule() const { return gm_; }
  const AlgebraAction& group_action() const { return action_; }
  const Character& chi() const { return chi_; }
  int twist_power() const { return power_; }
  const Mod& ambient() const { return ambient_; }
  bool perfect_presentation() const { return perfect_; }
  int gens() const { return static_cast<int>(genlab_.size()); }

  WittRing::Elem generator_elem(int t) const;
  RowZ coords(const WittRing::Elem& x) const;
  WittRing::Elem element(const RowZ& c) const;

  GModMap frobenius_map() const;

 private:
  WittRing ring_;
  AlgebraAction action_;
  Character chi_;
  int power_;
  Mod ambient_;
  bool perfect_ = false;
  std::vector<std::pair<int, int>> genlab_;  // (j, i) labels V^j tau(b_i)
  GModule gm_;
  MatZ frob_inv_;                          // inverse algebra Frobenius (perfect case)
  std::unordered_map<Int, RowZ> table_;    // element code -> coordinates (non-perfect)

  RowZ coords_perfect(const WittRing::Elem& x) const;
};

// cached construction; presentations are expensive for non-perfect algebras
std::shared_ptr<const WittModule> witt_module_cached(const FiniteAlgebra& a, int r,
                                                     const AlgebraAction& action,
                                                     const Character& chi, int power,
                                                     const Mod& ambient);

// level-change maps; both modules must share algebra, action, character
// reduction, twist power and ambient modulus
GModMap truncation_map(const WittModule& from, const WittModule& to);
GModMap verschiebung_map(const WittModule& from, const WittModule& to);
// along an equivariant algebra homomorphism (rows: image of each basis elt)
GModMap algebra_push_map(const WittModule& from, const WittModule& to, const MatZ& alg_map);

// Witt multiplication as a pairing (twists must add up)
Pairing witt_mult_pairing(const WittModule& a, const WittModule& b, const WittModule& target);

}  // namespace wittlift
