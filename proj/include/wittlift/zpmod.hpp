#pragma once

// Exact dense linear algebra over the residue rings Z/p^r.
//
// Matrices are Eigen int64 matrices with all entries kept reduced into
// [0, p^r). Row convention throughout: module elements are row vectors and
// maps act by x |-> x * A. Canonical forms are Howell normal forms, which
// are unique per row module and so give O(1) equality and membership tests.

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wittlift {

using Int = std::int64_t;
using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RowZ = Eigen::Matrix<Int, 1, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

struct ZpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The ring Z/p^r. Composite moduli are rejected at construction.
struct Mod {
  Int n = 0;  // p^r
  Int p = 0;
  int r = 0;

  static Mod make(Int modulus);

  friend bool operator==(const Mod& a, const Mod& b) { return a.n == b.n; }
};

Int mod_pos(Int x, Int n);

// p-adic valuation of a residue; val(0) = r.
int val_p(Int x, const Mod& m);
Int unit_part(Int x, const Mod& m);  // x * p^{-val(x)} mod n, a unit (1 for x = 0)
Int inv_mod(Int u, Int n);           // inverse of a unit mod n
Int pow_mod(Int b, Int e, Int n);

MatZ reduce(MatZ a, const Mod& m);
MatZ mul_mod(const MatZ& a, const MatZ& b, const Mod& m);
MatZ identity(int k);
MatZ zeros(int rows, int cols);

// Howell normal form of the row module of `a`. With key_cols < a.cols(), only
// the first key_cols columns are echelonized and the rest ride along as
// passenger data (used for kernel and solve bookkeeping); rows whose key part
// vanishes are returned too, after the pivot rows.
MatZ howell_form(const MatZ& a, const Mod& m, int key_cols = -1);

// Generators of { x : x * a = 0 }, Howell-reduced.
MatZ kernel_basis(const MatZ& a, const Mod& m);

// Some x with x * a = b, if one exists.
std::optional<RowZ> solve_row(const MatZ& a, const RowZ& b, const Mod& m);

// Unique coset representative of v modulo the row span of a Howell-form
// matrix (pivot rows only; passenger-free).
RowZ coset_reduce(const MatZ& howell, RowZ v, const Mod& m);

bool span_contains(const MatZ& howell, const RowZ& v, const Mod& m);
bool same_row_span(const MatZ& a, const MatZ& b, const Mod& m);

// Number of elements in the row span (as a power of p), by Howell pivots.
Int span_order(const MatZ& a, const Mod& m);

// Diagonalization D = U * A * V over Z/p^r with U, V invertible. Only V and
// V^{-1} are materialized; pivots come back as p-exponents per column of the
// transformed coordinate system (exponent r where no relation hits a column).
struct SmithData {
  std::vector<int> col_exp;  // size = cols; quotient factor at column j is p^col_exp[j]
  MatZ V, Vinv;
};
SmithData smith_diagonalize(MatZ a, const Mod& m);

// Presentation of the subquotient span(gens)/span(rels) of (Z/n)^ambient.
// Invariant factors are nonincreasing prime powers > 1; `basis_row(i)` is an
// ambient representative of the i-th cyclic generator and `coords` inverts
// that choice modulo the relations.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(MatZ gens, MatZ rels, const Mod& m);

  const Mod& mod() const { return mod_; }
  const std::vector<Int>& invariants() const { return inv_; }
  int rank() const { return static_cast<int>(inv_.size()); }
  Int order() const;

  RowZ basis_row(int i) const { return basis_.row(i); }
  const MatZ& basis() const { return basis_; }

  // Coordinates of an ambient element of span(gens); entry i is reduced
  // modulo invariants()[i]. Throws if v is outside the generator span.
  RowZ coords(const RowZ& v) const;
  RowZ from_coords(const RowZ& c) const;

  bool contains(const RowZ& v) const;           // in span(gens)?
  bool is_zero(const RowZ& v) const;            // in span(rels)?
  RowZ canon(const RowZ& v) const;              // unique rep of v + span(rels)
  const MatZ& rel_howell() const { return relh_; }

  // All canonical representatives, one per class (guarded by `limit`).
  std::vector<RowZ> enumerate(Int limit = 1 << 20) const;

 private:
  Mod mod_;
  int ambient_ = 0;
  MatZ gens_;      // original generator rows
  MatZ gen_aug_;   // Howell of [gens | I]
  MatZ relh_;      // Howell of rels in ambient coordinates
  std::vector<Int> inv_;
  MatZ basis_;     // rank x ambient
  MatZ coordmap_;  // gens.rows() x rank: y (gen coords) -> class coords
};

std::vector<Int> quotient_invariants(const MatZ& gens, const MatZ& rels, const Mod& m);

}  // namespace wittlift
