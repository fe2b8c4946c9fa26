#pragma once

// Short exact sequences of presented modules as first-class values: Baer
// sum, pushforward/pullback, the class in H^1(G, Hom(A, B)) of a
// geometrically split extension, the torsor <-> extension dictionary,
// extension automorphisms, lifting obstructions, and nonabelian H^1 with
// values in the Borel subgroup of GL_2.

#include "wittlift/cohomology.hpp"
#include "wittlift/witt.hpp"

#include <optional>
#include <vector>

namespace wittlift {

struct GModExtension {
  GModule b, e, a;  // 0 -> B -> E -> A -> 0
  GModMap inj;      // B -> E
  GModMap surj;     // E -> A
  ModuleSES ses() const { return ModuleSES{inj, surj}; }
  void validate() const { ses().validate(); }
};

GModExtension split_extension(const GModule& b, const GModule& a);
// twisted direct sum B (+) A along a 1-cocycle valued in Hom(A, B)
GModExtension extension_from_cocycle(const GModule& b, const GModule& a,
                                     const HomModule& hom, const RowZ& cocycle);

GModExtension direct_sum_extension(const GModExtension& e1, const GModExtension& e2);
GModExtension pushforward(const GModMap& f, const GModExtension& e);  // f: B -> B'
GModExtension pullback(const GModMap& g, const GModExtension& e);     // g: A' -> A
GModExtension baer_sum(const GModExtension& e1, const GModExtension& e2);

struct ExtensionClassResult {
  bool geometrically_trivial = false;
  RowZ cocycle;  // degree-1 cochain valued in hom (set iff geometrically_trivial)
  MatZ section;  // the module-level section used (a witness)
};
// class of E in H^1(G, Hom(A, B)); fails typed when no module-level section
// of the surjection exists
ExtensionClassResult extension_class(const GModExtension& e, const HomModule& hom);
// the cocycle g -> g.s - s of a given module-level section
RowZ extension_cocycle_from_section(const GModExtension& e, const HomModule& hom,
                                    const MatZ& section);

// automorphisms of E restricting to the identity on B and A, from Hom_G(A, B)
std::vector<MatZ> extension_automorphisms(const GModExtension& e);
// exhaustive search over all module endomorphisms (oracle)
std::vector<MatZ> extension_automorphisms_brute(const GModExtension& e,
                                                Int limit = 1 << 22);

// finite G-affine space: a torsor under a presented module
struct GAffineSpace {
  FiniteGroup group;
  GModule translations;
  std::vector<RowZ> tr_elems;            // canonical element list of translations
  int points = 0;
  std::vector<std::vector<int>> gact;    // [g][x]
  std::vector<std::vector<int>> tact;    // [x][t] -> x . tr_elems[t]
  int difference(int x, int y) const;    // index t with y . t = x
  void validate() const;
};

GAffineSpace torsor_of_extension(const GModExtension& e);  // needs A trivial rank one
GModExtension modulify(const GAffineSpace& x);
GModExtension extension_of_torsor(const GAffineSpace& x);
bool torsors_isomorphic(const GAffineSpace& x, const GAffineSpace& y);

// obstruction 2-cocycle for lifting a degree-1 class through a surjection
RowZ obstruction_class(const ModuleSES& ses, const RowZ& z_over_quot);
bool lift_exists_brute(const ModuleSES& ses, const RowZ& z_over_quot,
                       Int limit = 1 << 22);

// --- nonabelian H^1 with Borel coefficients ---------------------------------

// invertible upper-triangular 2x2 matrices over W_l(A), entries by code
struct BorelElem {
  Int a = 0, b = 0, d = 0;
  friend bool operator==(const BorelElem& x, const BorelElem& y) {
    return x.a == y.a && x.b == y.b && x.d == y.d;
  }
  friend bool operator<(const BorelElem& x, const BorelElem& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.d < y.d;
  }
};

class BorelGroup {
 public:
  BorelGroup(WittRing w, AlgebraAction action);
  const WittRing& ring() const { return w_; }
  const FiniteGroup& group() const { return action_.group; }

  std::vector<BorelElem> elements() const;  // all of S(W_l(A))
  BorelElem identity_elem() const;
  BorelElem mul(const BorelElem& x, const BorelElem& y) const;
  BorelElem inv(const BorelElem& x) const;
  BorelElem act(int g, const BorelElem& x) const;
  BorelElem reduce_mod_p(const BorelGroup& level1, const BorelElem& x) const;

  // cocycle tables z with z(gh) = z(g) . g(z(h)), up to twisted conjugacy
  std::vector<std::vector<BorelElem>> h1_classes(Int bound = 1 << 22) const;
  bool cocycle_law(const std::vector<BorelElem>& z) const;
  bool twisted_conjugate(const std::vector<BorelElem>& z1,
                         const std::vector<BorelElem>& z2) const;

 private:
  WittRing w_;
  AlgebraAction action_;
  std::vector<Int> unit_inverse_;  // by element code; -1 when not a unit
};

struct B2Surjectivity {
  bool surjective = false;
  // per mod-p class: a representative table and, when found, a lifted table
  std::vector<std::vector<BorelElem>> level1_reps;
  std::vector<std::optional<std::vector<BorelElem>>> lifts;
};
B2Surjectivity b2_reduction_surjective(const FiniteAlgebra& a, const AlgebraAction& action,
                                       Int bound = 1 << 22);

}  // namespace wittlift
