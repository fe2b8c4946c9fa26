#pragma once

// Finitely generated (Z/p^r, G)-modules presented by generators, relations
// and action matrices. Elements are row vectors of generator coefficients,
// considered modulo the relation span; maps act on the right. With the row
// convention, act(g, act(h, x)) = x * A_h * A_g, so the stored matrices
// compose contravariantly: A_h * A_g = A_{gh} (modulo relations).

#include "wittlift/algebra.hpp"
#include "wittlift/group.hpp"
#include "wittlift/zpmod.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace wittlift {

class GModule {
 public:
  GModule() = default;
  GModule(FiniteGroup g, Mod m, MatZ relations, std::vector<MatZ> action);

  const FiniteGroup& group() const { return group_; }
  const Mod& mod() const { return mod_; }
  int gens() const { return gens_; }
  const MatZ& relations() const { return rel_; }
  const MatZ& action(int g) const { return act_[g]; }

  RowZ act(int g, const RowZ& x) const;
  RowZ canon(const RowZ& x) const;  // unique representative mod relations
  bool elem_eq(const RowZ& x, const RowZ& y) const;
  bool is_relation(const RowZ& x) const;
  Int order() const;
  std::vector<RowZ> elements(Int limit = 1 << 16) const;
  const Subquotient& sq() const;

  // builders
  static GModule trivial(const FiniteGroup& g, const Mod& m);
  static GModule free_module(const FiniteGroup& g, const Mod& m, std::vector<MatZ> action);
  // Z/p^f(chi^power) presented at the (possibly larger) ambient modulus
  static GModule character_module(const Character& chi, int power, int exponent_f,
                                  const Mod& ambient);
  static GModule direct_sum(const GModule& a, const GModule& b);

  GModule restricted(const Subgroup& h) const;
  GModule inflated(const FiniteGroup& big, const QuotientGroup& q) const;
  // same abstract module presented over a larger ring (adds p^{old r} I rows)
  GModule raised(const Mod& bigger) const;
  // M/p^f at the same ambient modulus
  GModule quotient_by_p_power(int f) const;

  void validate() const;

 private:
  FiniteGroup group_;
  Mod mod_;
  int gens_ = 0;
  MatZ rel_;  // Howell form
  std::vector<MatZ> act_;
  std::shared_ptr<Subquotient> sq_;  // built eagerly; safe to share
};

struct GModMap {
  GModule from;
  GModule to;
  MatZ mat;

  RowZ apply(const RowZ& x) const;
  GModMap then(const GModMap& next) const;
  void validate() const;

  static GModMap identity_map(const GModule& m);
  static GModMap zero_map(const GModule& from, const GModule& to);
};

// direct-sum injections/projections
GModMap sum_inclusion(const GModule& a, const GModule& b, const GModule& sum, int which);
GModMap sum_projection(const GModule& sum, const GModule& a, const GModule& b, int which);

// Hom(M, N) as a GModule with (g.F)(x) = g.F(g^{-1} x).
struct HomModule {
  GModule hom;
  int km = 0, kn = 0;
  Subquotient flat;  // subquotient of the flattened matrix space

  RowZ encode(const MatZ& f) const;
  MatZ decode(const RowZ& coords) const;
  bool represents_map(const MatZ& f) const;
};
HomModule hom_module(const GModule& m, const GModule& n);

// Maps_H(G, M) on right-coset generators, with evaluation-at-identity and
// the G-equivariant trace map used for corestriction.
struct InducedModule {
  GModule module;  // over the big group
  GModule base;    // the original module over H
  RightCosets cosets;
  int base_gens = 0;
  MatZ eval0;  // module -> M, H-equivariant (coset of identity)
  // trace: gen (c, i) -> t_c^{-1} . e_i, defined when M carries a G-action
  MatZ trace(const GModule& m_over_g) const;
};
InducedModule induced_module(const FiniteGroup& g, const Subgroup& h, const GModule& m);

// bilinear pairing M x N -> T given on generator pairs (row (i*kn+j) is the
// image of (e_i, e_j)); validated equivariant and relation-compatible
struct Pairing {
  GModule a, b, target;
  MatZ tensor;
  RowZ pair(const RowZ& x, const RowZ& y) const;
  void validate() const;
};

}  // namespace wittlift
