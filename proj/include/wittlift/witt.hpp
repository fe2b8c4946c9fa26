#pragma once

// Truncated p-typical Witt vectors W_r(A) over a finite F_p-algebra A.
//
// The ring laws are evaluated from the universal Witt polynomials, which are
// computed once per (p, r) by inverting the ghost map over exact rationals
// and asserting integrality, then reduced mod p. No formulas are hand-coded.

#include "wittlift/algebra.hpp"
#include "wittlift/multipoly.hpp"

#include <vector>

namespace wittlift {

struct UniversalWittPolys {
  Int p = 2;
  int r = 1;
  // over 2r variables a_0..a_{r-1}, b_0..b_{r-1}
  std::vector<QPoly> add;
  std::vector<QPoly> mul;
  // over r variables
  std::vector<QPoly> neg;
};

// Cached per (p, r); write-once, safe for concurrent readers.
const UniversalWittPolys& universal_witt_polys(Int p, int r, Int bound = 125);

// Ghost component w_i as a polynomial in variables offset..offset+i.
QPoly ghost_poly(Int p, int i, int nvars, int offset);

class WittRing {
 public:
  // Elements are r x dim(A) integer matrices over F_p; row j is the j-th
  // Witt coordinate.
  using Elem = MatZ;

  WittRing(FiniteAlgebra a, int r, Int bound = 125);

  const FiniteAlgebra& coeff() const { return alg_; }
  int length() const { return r_; }
  Int p() const { return alg_.p(); }

  Elem zero() const;
  Elem one() const;
  Elem teichmuller(const RowZ& a) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem scalar(Int n, const Elem& x) const;
  Elem verschiebung(const Elem& x) const;
  Elem frobenius(const Elem& x) const;
  // componentwise image under an algebra endomorphism (row convention)
  Elem map_coeffs(const MatZ& ring_map, const Elem& x) const;

  // truncation pi_{r,r2}; result lives in the length-r2 ring
  Elem truncate(const Elem& x, int r2) const;
  // (0,...,0, a_0, ..., a_{s-1-k}) from a length-(r-k) element, via V^k
  Elem verschiebung_in(const Elem& shorter, int k) const;

  bool is_zero(const Elem& x) const { return x.isZero(); }
  Int encode(const Elem& x) const;
  Elem decode(Int code) const;
  Int element_count() const;
  std::vector<Elem> elements(Int limit = 1 << 21) const;

  // unique digits with x = sum_j V^j tau(d_j)
  std::vector<RowZ> v_digits(const Elem& x) const;
  Elem from_v_digits(const std::vector<RowZ>& digits) const;

 private:
  FiniteAlgebra alg_;
  int r_;
  const UniversalWittPolys* polys_;
  std::vector<FpPoly> addp_, mulp_, negp_;
  void check_elem(const Elem& x) const;
};

}  // namespace wittlift
