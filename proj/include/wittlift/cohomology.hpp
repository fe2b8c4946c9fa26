#pragma once

// Group cohomology H^n(G, M) of presented modules through the inhomogeneous
// bar resolution. Cochains in degree n are row vectors of length |G|^n * k
// indexed by (tuple, generator); classes are compared through canonical
// representatives (Howell reduction against the coboundary span), so two
// classes are equal iff their canonical vectors are identical.

#include "wittlift/gmodule.hpp"

#include <memory>
#include <optional>

namespace wittlift {

Int tuple_count(int group_order, int n);
Int tuple_to_index(const std::vector<int>& t, int group_order);
std::vector<int> index_to_tuple(Int idx, int group_order, int n);

MatZ bar_differential(const GModule& m, int n);
MatZ relation_blocks(const GModule& m, int n);

RowZ cochain_value(const GModule& m, const RowZ& z, const std::vector<int>& tuple);
void set_cochain_value(const GModule& m, RowZ& z, const std::vector<int>& tuple,
                       const RowZ& value);

class CohomologyGroup {
 public:
  // degree <= 2 by default; degree 3 is allowed when the cochain spaces stay
  // under `deep_guard` coordinates.
  CohomologyGroup(GModule m, int degree, Int deep_guard = 8192);

  const GModule& module() const { return m_; }
  int degree() const { return n_; }
  const std::vector<Int>& invariants() const { return hsq_->invariants(); }
  int rank() const { return hsq_->rank(); }
  Int order() const { return hsq_->order(); }

  Int cochain_dim(int n) const;
  const MatZ& differential(int n) const;  // 0 <= n <= degree
  RowZ apply_differential(int n, const RowZ& z) const;
  bool is_cocycle(const RowZ& z) const;
  bool is_coboundary(const RowZ& z) const;

  RowZ canon(const RowZ& z) const;
  RowZ zero_class() const;
  RowZ class_rep(int i) const;
  RowZ coords_of(const RowZ& z) const;
  RowZ rep_from_coords(const RowZ& c) const;
  std::vector<RowZ> all_classes(Int limit = 1 << 14) const;
  RowZ add_classes(const RowZ& a, const RowZ& b) const;
  RowZ sub_classes(const RowZ& a, const RowZ& b) const;
  RowZ scalar_class(Int c, const RowZ& a) const;

  const MatZ& cocycle_basis() const { return zmat_; }
  const MatZ& coboundary_basis() const { return bmat_; }

 private:
  GModule m_;
  int n_;
  std::vector<MatZ> diff_;
  MatZ zmat_, bmat_;
  std::shared_ptr<Subquotient> hsq_;
};

// cached construction (write-once per presentation and degree)
std::shared_ptr<const CohomologyGroup> cohomology(const GModule& m, int degree);

// short exact sequence of presented modules
struct ModuleSES {
  GModMap inj;   // A -> B
  GModMap surj;  // B -> C
  void validate() const;
};

// cochain-level maps; results are cocycles in the target complex
RowZ map_cochain(const GModMap& f, int degree, const RowZ& z);
RowZ restrict_cochain(const GModule& m, const Subgroup& h, int degree, const RowZ& z);
RowZ inflate_cochain(const GModule& m_over_quotient, const FiniteGroup& big,
                     const QuotientGroup& q, int degree, const RowZ& z);
RowZ cup_cochain(const Pairing& pairing, int deg_a, const RowZ& a, int deg_b,
                 const RowZ& b);
RowZ connecting_cochain(const ModuleSES& ses, int degree, const RowZ& z);

RowZ shapiro_forward(const InducedModule& ind, const Subgroup& h, int degree,
                     const RowZ& z);
// solve for a (G, Ind M)-cocycle mapping to the given (H, M)-class
RowZ shapiro_inverse(const InducedModule& ind, const Subgroup& h, int degree,
                     const RowZ& target);
RowZ corestrict_cochain(const GModule& m_over_g, const Subgroup& h, int degree,
                        const RowZ& z_over_h);

// some cocycle z over f.from with f(z) ~ target (mod coboundaries), if any
std::optional<RowZ> lift_class_through(const GModMap& f, int degree, const RowZ& target);
bool surjective_on_classes(const GModMap& f, int degree);

}  // namespace wittlift
