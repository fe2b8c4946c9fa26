#include "wittlift/zpmod.hpp"

#include <algorithm>
#include <numeric>

namespace wittlift {

Mod Mod::make(Int modulus) {
  if (modulus < 2) throw ZpError("modulus must be >= 2");
  Int p = 0;
  for (Int d = 2; d * d <= modulus; ++d) {
    if (modulus % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = modulus;  // prime
  Mod m;
  m.p = p;
  m.n = modulus;
  m.r = 0;
  Int t = modulus;
  while (t > 1) {
    if (t % p != 0) throw ZpError("modulus is not a prime power");
    t /= p;
    ++m.r;
  }
  return m;
}

Int mod_pos(Int x, Int n) {
  Int y = x % n;
  return y < 0 ? y + n : y;
}

int val_p(Int x, const Mod& m) {
  x = mod_pos(x, m.n);
  if (x == 0) return m.r;
  int v = 0;
  while (x % m.p == 0) {
    x /= m.p;
    ++v;
  }
  return v;
}

Int unit_part(Int x, const Mod& m) {
  x = mod_pos(x, m.n);
  if (x == 0) return 1;
  while (x % m.p == 0) x /= m.p;
  return x;
}

Int inv_mod(Int u, Int n) {
  Int t = 0, newt = 1, r = n, newr = mod_pos(u, n);
  while (newr != 0) {
    Int q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw ZpError("not a unit");
  return mod_pos(t, n);
}

Int pow_mod(Int b, Int e, Int n) {
  b = mod_pos(b, n);
  Int out = 1 % n;
  while (e > 0) {
    if (e & 1) out = (out * b) % n;
    b = (b * b) % n;
    e >>= 1;
  }
  return out;
}

MatZ reduce(MatZ a, const Mod& m) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = mod_pos(a(i, j), m.n);
  return a;
}

MatZ mul_mod(const MatZ& a, const MatZ& b, const Mod& m) {
  if (a.cols() != b.rows()) throw ZpError("mul_mod: dimension mismatch");
  MatZ c = a * b;
  return reduce(std::move(c), m);
}

MatZ identity(int k) { return MatZ::Identity(k, k); }
MatZ zeros(int rows, int cols) { return MatZ::Zero(rows, cols); }

namespace {

int lead_col(const RowZ& row, int key_cols) {
  for (int j = 0; j < key_cols; ++j)
    if (row(j) != 0) return j;
  return -1;
}

// Core Howell elimination. Returns pivot rows (sorted by leading key column)
// followed by rows whose key part is zero.
MatZ howell_core(const MatZ& a, const Mod& m, int key_cols) {
  const int cols = static_cast<int>(a.cols());
  std::vector<RowZ> pool;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    RowZ row = reduce(a.row(i), m);
    if (!row.isZero()) pool.push_back(row);
  }
  std::vector<RowZ> pivots;
  std::vector<int> pivcol, pivval;

  for (int j = 0; j < key_cols; ++j) {
    int best = -1, bestval = m.r + 1;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (lead_col(pool[i], key_cols) != j) continue;
      int v = val_p(pool[i](j), m);
      if (v < bestval) {
        bestval = v;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) continue;
    RowZ piv = pool[best];
    pool.erase(pool.begin() + best);
    const int v = bestval;
    // normalize leading entry to p^v
    Int u = inv_mod(unit_part(piv(j), m), m.n);
    piv = reduce(piv * u, m);
    // eliminate every remaining row leading at j
    for (auto& row : pool) {
      if (lead_col(row, key_cols) != j) continue;
      int w = val_p(row(j), m);
      Int factor = unit_part(row(j), m);
      for (int t = 0; t < w - v; ++t) factor = (factor * m.p) % m.n;
      row = reduce(row - factor * piv, m);
    }
    // Howell closure: the annihilator multiple spans the deeper layers
    if (v > 0) {
      Int pv = 1;
      for (int t = 0; t < v; ++t) pv *= m.p;
      RowZ extra = reduce((m.n / pv) * piv, m);
      if (!extra.isZero()) pool.push_back(extra);
    }
    pivots.push_back(piv);
    pivcol.push_back(j);
    pivval.push_back(v);
  }

  // reduce entries above each pivot into [0, p^v)
  for (size_t k = 0; k < pivots.size(); ++k) {
    Int pv = 1;
    for (int t = 0; t < pivval[k]; ++t) pv *= m.p;
    for (size_t i = 0; i < k; ++i) {
      Int q = pivots[i](pivcol[k]) / pv;
      if (q != 0) pivots[i] = reduce(pivots[i] - q * pivots[k], m);
    }
  }

  // remaining pool rows have zero key part; canonicalize their order
  std::vector<RowZ> nulls;
  for (auto& row : pool)
    if (!row.isZero()) nulls.push_back(row);
  std::sort(nulls.begin(), nulls.end(), [cols](const RowZ& x, const RowZ& y) {
    for (int j = 0; j < cols; ++j)
      if (x(j) != y(j)) return x(j) < y(j);
    return false;
  });
  nulls.erase(std::unique(nulls.begin(), nulls.end(),
                          [](const RowZ& x, const RowZ& y) { return x == y; }),
              nulls.end());

  MatZ out(pivots.size() + nulls.size(), cols);
  for (size_t i = 0; i < pivots.size(); ++i) out.row(i) = pivots[i];
  for (size_t i = 0; i < nulls.size(); ++i) out.row(pivots.size() + i) = nulls[i];
  return out;
}

}  // namespace

MatZ howell_form(const MatZ& a, const Mod& m, int key_cols) {
  if (key_cols < 0) key_cols = static_cast<int>(a.cols());
  return howell_core(a, m, key_cols);
}

MatZ kernel_basis(const MatZ& a, const Mod& m) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  MatZ aug(rows, cols + rows);
  aug << reduce(a, m), identity(rows);
  MatZ h = howell_core(aug, m, cols);
  std::vector<RowZ> ker;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (h.row(i).head(cols).isZero()) ker.push_back(h.row(i).tail(rows));
  }
  MatZ k(ker.size(), rows);
  for (size_t i = 0; i < ker.size(); ++i) k.row(i) = ker[i];
  return howell_core(k, m, rows);
}

std::optional<RowZ> solve_row(const MatZ& a, const RowZ& b, const Mod& m) {
  if (b.cols() != a.cols()) throw ZpError("solve_row: dimension mismatch");
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  if (rows == 0) {
    if (reduce(b, m).isZero()) return RowZ(RowZ::Zero(0));
    return std::nullopt;
  }
  MatZ aug(rows, cols + rows);
  aug << reduce(a, m), identity(rows);
  MatZ h = howell_core(aug, m, cols);
  RowZ residual = reduce(b, m);
  RowZ x = RowZ::Zero(rows);
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    int j = lead_col(h.row(i), cols);
    if (j < 0) continue;
    Int pv = 1;
    for (int t = 0; t < val_p(h(i, j), m); ++t) pv *= m.p;
    Int q = residual(j) / pv;
    if (q != 0) {
      residual = reduce(residual - q * h.row(i).head(cols), m);
      x = reduce(x + q * h.row(i).tail(rows), m);
    }
  }
  if (!residual.isZero()) return std::nullopt;
  return x;
}

RowZ coset_reduce(const MatZ& howell, RowZ v, const Mod& m) {
  const int cols = static_cast<int>(v.cols());
  v = reduce(std::move(v), m);
  for (Eigen::Index i = 0; i < howell.rows(); ++i) {
    int j = lead_col(howell.row(i), cols);
    if (j < 0) continue;
    Int pv = 1;
    for (int t = 0; t < val_p(howell(i, j), m); ++t) pv *= m.p;
    Int q = v(j) / pv;
    if (q != 0) v = reduce(v - q * howell.row(i), m);
  }
  return v;
}

bool span_contains(const MatZ& howell, const RowZ& v, const Mod& m) {
  return coset_reduce(howell, v, m).isZero();
}

bool same_row_span(const MatZ& a, const MatZ& b, const Mod& m) {
  MatZ ha = howell_form(a, m), hb = howell_form(b, m);
  return ha.rows() == hb.rows() && ha == hb;
}

Int span_order(const MatZ& a, const Mod& m) {
  MatZ h = howell_form(a, m);
  Int order = 1;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    int j = lead_col(h.row(i), static_cast<int>(h.cols()));
    if (j < 0) continue;
    int v = val_p(h(i, j), m);
    for (int t = 0; t < m.r - v; ++t) order *= m.p;
  }
  return order;
}

SmithData smith_diagonalize(MatZ a, const Mod& m) {
  a = reduce(std::move(a), m);
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  SmithData out;
  out.col_exp.assign(cols, m.r);
  out.V = identity(cols);
  out.Vinv = identity(cols);

  int t = 0;
  while (t < rows && t < cols) {
    int bi = -1, bj = -1, bv = m.r + 1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        int v = val_p(a(i, j), m);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    a.row(t).swap(a.row(bi));
    if (bj != t) {
      a.col(t).swap(a.col(bj));
      out.V.col(t).swap(out.V.col(bj));
      out.Vinv.row(t).swap(out.Vinv.row(bj));
    }
    Int u = inv_mod(unit_part(a(t, t), m), m.n);
    a.row(t) = reduce(a.row(t) * u, m);
    Int pv = 1;
    for (int k = 0; k < bv; ++k) pv *= m.p;
    // clear the pivot column (row operations, untracked)
    for (int i = 0; i < rows; ++i) {
      if (i == t || a(i, t) == 0) continue;
      Int q = a(i, t) / pv;  // exact: bv is the global minimum valuation
      a.row(i) = reduce(a.row(i) - q * a.row(t), m);
    }
    // clear the pivot row (column operations, tracked in V)
    for (int j = 0; j < cols; ++j) {
      if (j == t || a(t, j) == 0) continue;
      Int q = a(t, j) / pv;
      a.col(j) = reduce(a.col(j) - q * a.col(t), m);
      out.V.col(j) = reduce(out.V.col(j) - q * out.V.col(t), m);
      out.Vinv.row(t) = reduce(out.Vinv.row(t) + q * out.Vinv.row(j), m);
    }
    out.col_exp[t] = bv;
    ++t;
  }
  return out;
}

Subquotient::Subquotient(MatZ gens, MatZ rels, const Mod& m) : mod_(m) {
  ambient_ = static_cast<int>(gens.cols());
  if (rels.rows() > 0 && rels.cols() != gens.cols())
    throw ZpError("subquotient: ambient mismatch");
  gens_ = reduce(std::move(gens), m);
  if (rels.rows() == 0) rels = MatZ(0, ambient_);
  relh_ = howell_form(rels, m);

  const int g = static_cast<int>(gens_.rows());
  MatZ aug(g, ambient_ + g);
  aug << gens_, identity(g);
  gen_aug_ = howell_form(aug, m, ambient_);

  // relations in generator coordinates, plus syzygies of the generators
  std::vector<RowZ> relrows;
  for (Eigen::Index i = 0; i < relh_.rows(); ++i) {
    auto y = solve_row(gens_, relh_.row(i), m);
    if (!y) throw ZpError("subquotient: relation outside generator span");
    relrows.push_back(*y);
  }
  MatZ syz = kernel_basis(gens_, m);
  for (Eigen::Index i = 0; i < syz.rows(); ++i) relrows.push_back(syz.row(i));
  MatZ rfull(relrows.size(), g);
  for (size_t i = 0; i < relrows.size(); ++i) rfull.row(i) = relrows[i];

  SmithData sd = smith_diagonalize(rfull, m);

  // order columns by decreasing factor size, drop trivial factors
  std::vector<int> keep;
  for (int j = 0; j < g; ++j)
    if (sd.col_exp[j] > 0) keep.push_back(j);
  std::stable_sort(keep.begin(), keep.end(),
                   [&](int x, int y) { return sd.col_exp[x] > sd.col_exp[y]; });

  inv_.clear();
  basis_ = MatZ(keep.size(), ambient_);
  coordmap_ = MatZ(g, keep.size());
  for (size_t s = 0; s < keep.size(); ++s) {
    int j = keep[s];
    Int f = 1;
    for (int k = 0; k < sd.col_exp[j]; ++k) f *= m.p;
    inv_.push_back(f);
    basis_.row(s) = reduce(sd.Vinv.row(j) * gens_, m);
    coordmap_.col(s) = sd.V.col(j);
  }
}

Int Subquotient::order() const {
  Int o = 1;
  for (Int f : inv_) o *= f;
  return o;
}

RowZ Subquotient::coords(const RowZ& v) const {
  // solve y * gens = v through the cached augmented Howell form
  const int g = static_cast<int>(gens_.rows());
  RowZ residual = reduce(v, mod_);
  RowZ y = RowZ::Zero(g);
  for (Eigen::Index i = 0; i < gen_aug_.rows(); ++i) {
    int j = -1;
    for (int c = 0; c < ambient_; ++c)
      if (gen_aug_(i, c) != 0) {
        j = c;
        break;
      }
    if (j < 0) continue;
    Int pv = 1;
    for (int t = 0; t < val_p(gen_aug_(i, j), mod_); ++t) pv *= mod_.p;
    Int q = residual(j) / pv;
    if (q != 0) {
      residual = reduce(residual - q * gen_aug_.row(i).head(ambient_), mod_);
      y = reduce(y + q * gen_aug_.row(i).tail(g), mod_);
    }
  }
  if (!residual.isZero()) throw ZpError("coords: element outside generator span");
  RowZ c = reduce(y * coordmap_, mod_);
  for (int s = 0; s < rank(); ++s) c(s) %= inv_[s];
  return c;
}

RowZ Subquotient::from_coords(const RowZ& c) const {
  if (c.cols() != rank()) throw ZpError("from_coords: bad length");
  if (rank() == 0) return RowZ::Zero(ambient_);
  return reduce(c * basis_, mod_);
}

bool Subquotient::contains(const RowZ& v) const {
  return solve_row(gens_, v, mod_).has_value();
}

bool Subquotient::is_zero(const RowZ& v) const {
  return span_contains(relh_, v, mod_);
}

RowZ Subquotient::canon(const RowZ& v) const { return coset_reduce(relh_, v, mod_); }

std::vector<RowZ> Subquotient::enumerate(Int limit) const {
  if (order() > limit) throw ZpError("subquotient enumeration over limit");
  std::vector<RowZ> out;
  RowZ c = RowZ::Zero(rank());
  while (true) {
    out.push_back(canon(from_coords(c)));
    int s = 0;
    for (; s < rank(); ++s) {
      if (++c(s) < inv_[s]) break;
      c(s) = 0;
    }
    if (s == rank()) break;
  }
  if (rank() == 0) out.resize(1);
  return out;
}

std::vector<Int> quotient_invariants(const MatZ& gens, const MatZ& rels, const Mod& m) {
  return Subquotient(gens, rels, m).invariants();
}

}  // namespace wittlift
