#include "wittlift/algebra.hpp"

#include <algorithm>
#include <set>

namespace wittlift {

namespace {

bool poly_is_irreducible(Int p, const std::vector<Int>& poly) {
  // poly monic of degree deg; scan for factors of degree <= deg/2
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // roots
  for (Int x = 0; x < p; ++x) {
    Int acc = 0, xp = 1;
    for (Int c : poly) {
      acc = mod_pos(acc + c * xp, p);
      xp = mod_pos(xp * x, p);
    }
    if (acc == 0) return false;
  }
  if (deg <= 3) return true;
  // trial division by monic polynomials of degree 2..deg/2
  auto polymod = [&](std::vector<Int> a, const std::vector<Int>& b) {
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
      int da = static_cast<int>(a.size()) - 1;
      Int lead = a.back();
      if (lead != 0)
        for (int i = 0; i <= db; ++i)
          a[da - db + i] = mod_pos(a[da - db + i] - lead * b[i], p);
      a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  };
  for (int db = 2; db <= deg / 2; ++db) {
    std::vector<Int> b(db + 1, 0);
    b[db] = 1;
    Int total = 1;
    for (int i = 0; i < db; ++i) total *= p;
    for (Int code = 0; code < total; ++code) {
      Int c = code;
      for (int i = 0; i < db; ++i) {
        b[i] = c % p;
        c /= p;
      }
      if (polymod(poly, b).empty()) return false;
    }
  }
  return true;
}

}  // namespace

void FiniteAlgebra::validate() const {
  Mod m = base_mod();
  if (mult_.rows() != static_cast<Eigen::Index>(d_) * d_ || mult_.cols() != d_)
    throw ZpError("algebra structure constants have wrong shape");
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < i; ++j)
      if (mult_.row(i * d_ + j) != mult_.row(j * d_ + i))
        throw ZpError("algebra multiplication not commutative");
  for (int i = 0; i < d_; ++i) {
    if (reduce(one_ * mul_matrix(basis(i)), m) != basis(i))
      throw ZpError("algebra unit is not a unit");
  }
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) {
        RowZ lhs = mul(mul(basis(i), basis(j)), basis(k));
        RowZ rhs = mul(basis(i), mul(basis(j), basis(k)));
        if (lhs != rhs) throw ZpError("algebra multiplication not associative");
      }
}

FiniteAlgebra FiniteAlgebra::prime_field(Int p) {
  FiniteAlgebra a;
  a.p_ = p;
  a.d_ = 1;
  a.mult_ = MatZ::Ones(1, 1);
  a.one_ = RowZ::Ones(1);
  a.factor_dims_ = {1};
  a.validate();
  return a;
}

FiniteAlgebra FiniteAlgebra::finite_field(Int p, std::vector<Int> poly) {
  for (auto& c : poly) c = mod_pos(c, p);
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg == 1) return prime_field(p);
  if (deg < 1 || poly.back() != 1) throw ZpError("finite_field: need a monic polynomial");
  if (!poly_is_irreducible(p, poly)) throw ZpError("finite_field: polynomial is reducible");

  // basis 1, x, ..., x^{deg-1}; reduce x^k against poly
  std::vector<RowZ> xpow(2 * deg - 1, RowZ::Zero(deg));
  for (int k = 0; k < deg; ++k) xpow[k](k) = 1;
  for (int k = deg; k < 2 * deg - 1; ++k) {
    // x^k = x * x^{k-1}, then reduce
    RowZ prev = xpow[k - 1];
    RowZ cur = RowZ::Zero(deg);
    Int carry = prev(deg - 1);
    for (int i = deg - 1; i > 0; --i) cur(i) = prev(i - 1);
    cur(0) = 0;
    for (int i = 0; i < deg; ++i) cur(i) = mod_pos(cur(i) - carry * poly[i], p);
    xpow[k] = cur;
  }
  FiniteAlgebra a;
  a.p_ = p;
  a.d_ = deg;
  a.mult_ = MatZ::Zero(deg * deg, deg);
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < deg; ++j) a.mult_.row(i * deg + j) = xpow[i + j];
  a.one_ = RowZ::Zero(deg);
  a.one_(0) = 1;
  a.factor_dims_ = {deg};
  a.validate();
  return a;
}

FiniteAlgebra FiniteAlgebra::truncated_poly(Int p, int k) {
  if (k < 1) throw ZpError("truncated_poly: need k >= 1");
  FiniteAlgebra a;
  a.p_ = p;
  a.d_ = k;
  a.mult_ = MatZ::Zero(k * k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) a.mult_(i * k + j, i + j) = 1;
  a.one_ = RowZ::Zero(k);
  a.one_(0) = 1;
  a.factor_dims_ = {k};
  a.validate();
  return a;
}

FiniteAlgebra FiniteAlgebra::product(const std::vector<FiniteAlgebra>& factors) {
  if (factors.empty()) throw ZpError("empty product");
  Int p = factors[0].p();
  int d = 0;
  for (auto& f : factors) {
    if (f.p() != p) throw ZpError("product over mixed characteristics");
    d += f.dim();
  }
  FiniteAlgebra a;
  a.p_ = p;
  a.d_ = d;
  a.mult_ = MatZ::Zero(d * d, d);
  a.one_ = RowZ::Zero(d);
  int off = 0;
  for (auto& f : factors) {
    for (int i = 0; i < f.dim(); ++i)
      for (int j = 0; j < f.dim(); ++j)
        a.mult_.row((off + i) * d + (off + j)).segment(off, f.dim()) =
            f.mult_.row(i * f.dim() + j);
    a.one_.segment(off, f.dim()) = f.one();
    a.factor_dims_.push_back(f.dim());
    off += f.dim();
  }
  a.validate();
  return a;
}

FiniteAlgebra FiniteAlgebra::from_structure(Int p, MatZ mult, RowZ unit) {
  FiniteAlgebra a;
  a.p_ = p;
  a.d_ = static_cast<int>(unit.cols());
  Mod m = Mod::make(p);
  a.mult_ = reduce(std::move(mult), m);
  a.one_ = reduce(std::move(unit), m);
  a.factor_dims_ = {a.d_};
  a.validate();
  return a;
}

RowZ FiniteAlgebra::basis(int i) const {
  RowZ b = RowZ::Zero(d_);
  b(i) = 1;
  return b;
}

MatZ FiniteAlgebra::mul_matrix(const RowZ& a) const {
  MatZ m = MatZ::Zero(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      if (a(j) != 0) m.row(i) += a(j) * mult_.row(i * d_ + j);
  return reduce(std::move(m), base_mod());
}

RowZ FiniteAlgebra::mul(const RowZ& a, const RowZ& b) const {
  RowZ out = RowZ::Zero(d_);
  for (int i = 0; i < d_; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < d_; ++j)
      if (b(j) != 0) out += a(i) * b(j) * mult_.row(i * d_ + j);
  }
  return reduce(std::move(out), base_mod());
}

RowZ FiniteAlgebra::add(const RowZ& a, const RowZ& b) const {
  return reduce(a + b, base_mod());
}

RowZ FiniteAlgebra::neg(const RowZ& a) const { return reduce(-a, base_mod()); }

RowZ FiniteAlgebra::pow(const RowZ& a, Int e) const {
  RowZ out = one_;
  RowZ b = a;
  while (e > 0) {
    if (e & 1) out = mul(out, b);
    b = mul(b, b);
    e >>= 1;
  }
  return out;
}

std::optional<RowZ> FiniteAlgebra::inverse(const RowZ& a) const {
  return solve_row(mul_matrix(a), one_, base_mod());
}

Int FiniteAlgebra::element_count() const {
  Int c = 1;
  for (int i = 0; i < d_; ++i) c *= p_;
  return c;
}

std::vector<RowZ> FiniteAlgebra::elements() const {
  std::vector<RowZ> out;
  out.reserve(element_count());
  for (Int code = 0; code < element_count(); ++code) out.push_back(decode(code));
  return out;
}

Int FiniteAlgebra::encode(const RowZ& a) const {
  Int code = 0;
  for (int i = d_ - 1; i >= 0; --i) code = code * p_ + mod_pos(a(i), p_);
  return code;
}

RowZ FiniteAlgebra::decode(Int code) const {
  RowZ a = RowZ::Zero(d_);
  for (int i = 0; i < d_; ++i) {
    a(i) = code % p_;
    code /= p_;
  }
  return a;
}

MatZ FiniteAlgebra::frobenius_matrix() const {
  MatZ f(d_, d_);
  for (int i = 0; i < d_; ++i) f.row(i) = pow(basis(i), p_);
  return f;
}

bool FiniteAlgebra::is_perfect() const {
  return kernel_basis(frobenius_matrix(), base_mod()).rows() == 0;
}

MatZ FiniteAlgebra::nilradical_basis() const {
  // x nilpotent iff x^{p^m} = 0 once p^m >= dim; that map is F_p-linear
  MatZ f = frobenius_matrix();
  MatZ fm = identity(d_);
  Int pm = 1;
  while (pm < d_) {
    fm = mul_mod(fm, f, base_mod());
    pm *= p_;
  }
  return kernel_basis(fm, base_mod());
}

std::pair<int, int> FiniteAlgebra::nilpotency_data() const {
  MatZ n = nilradical_basis();
  int k = 1;
  MatZ power = n;
  while (power.rows() > 0) {
    ++k;
    std::vector<RowZ> prods;
    for (Eigen::Index i = 0; i < power.rows(); ++i)
      for (Eigen::Index j = 0; j < n.rows(); ++j)
        prods.push_back(mul(power.row(i), n.row(j)));
    MatZ pmat(prods.size(), d_);
    for (size_t i = 0; i < prods.size(); ++i) pmat.row(i) = prods[i];
    power = howell_form(pmat, base_mod());
  }
  int m = 0;
  Int pm = 1;
  while (pm < k) {
    pm *= p_;
    ++m;
  }
  return {k, m};
}

RowZ AlgebraAction::act(const FiniteAlgebra& a, int g, const RowZ& x) const {
  return reduce(x * mats[g], a.base_mod());
}

void AlgebraAction::validate(const FiniteAlgebra& a) const {
  Mod m = a.base_mod();
  if (static_cast<int>(mats.size()) != group.order())
    throw ZpError("action table size mismatch");
  for (int g = 0; g < group.order(); ++g) {
    if (reduce(a.one() * mats[g], m) != a.one()) throw ZpError("action does not fix 1");
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        RowZ lhs = reduce(a.mul(a.basis(i), a.basis(j)) * mats[g], m);
        RowZ rhs = a.mul(reduce(a.basis(i) * mats[g], m), reduce(a.basis(j) * mats[g], m));
        if (lhs != rhs) throw ZpError("action is not multiplicative");
      }
  }
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      if (mul_mod(mats[h], mats[g], m) != mats[group.mul(g, h)])
        throw ZpError("action is not a group homomorphism");
  if (mats[group.identity()] != identity(a.dim()))
    throw ZpError("identity must act trivially");
}

AlgebraAction AlgebraAction::restricted(const Subgroup& h) const {
  AlgebraAction out;
  out.group = h.group;
  out.mats.resize(h.group.order());
  for (int i = 0; i < h.group.order(); ++i) out.mats[i] = mats[h.embed[i]];
  return out;
}

AlgebraAction AlgebraAction::trivial(const FiniteGroup& g, const FiniteAlgebra& a) {
  AlgebraAction act;
  act.group = g;
  act.mats.assign(g.order(), identity(a.dim()));
  return act;
}

AlgebraAction AlgebraAction::cyclic_frobenius(const FiniteGroup& cyclic,
                                              const FiniteAlgebra& a, int t) {
  // element k of C_n acts as Frob^{t*k}
  AlgebraAction act;
  act.group = cyclic;
  Mod m = a.base_mod();
  MatZ f = a.frobenius_matrix();
  MatZ ft = identity(a.dim());
  for (int i = 0; i < t; ++i) ft = mul_mod(ft, f, m);
  act.mats.resize(cyclic.order());
  MatZ cur = identity(a.dim());
  for (int k = 0; k < cyclic.order(); ++k) {
    act.mats[k] = cur;
    cur = mul_mod(cur, ft, m);
  }
  act.validate(a);
  return act;
}

AlgebraAction AlgebraAction::product_action(const FiniteGroup& g, const FiniteAlgebra& prod,
                                            const std::vector<std::vector<int>>& perms,
                                            const std::vector<std::vector<int>>& frob) {
  const auto& dims = prod.factor_dims();
  const int nf = static_cast<int>(dims.size());
  std::vector<int> off(nf, 0);
  for (int i = 1; i < nf; ++i) off[i] = off[i - 1] + dims[i - 1];
  Mod m = prod.base_mod();
  MatZ f = prod.frobenius_matrix();
  AlgebraAction act;
  act.group = g;
  act.mats.resize(g.order());
  for (int e = 0; e < g.order(); ++e) {
    MatZ mat = MatZ::Zero(prod.dim(), prod.dim());
    for (int i = 0; i < nf; ++i) {
      int j = perms[e][i];
      if (dims[i] != dims[j]) throw ZpError("permutation across unequal factors");
      // x in factor i maps to Frob^t(x) placed in factor j
      MatZ blk = identity(dims[i]);
      for (int t = 0; t < frob[e][i]; ++t) {
        // frobenius inside the factor: use the full matrix restricted
        MatZ sub = f.block(off[i], off[i], dims[i], dims[i]);
        blk = mul_mod(blk, sub, m);
      }
      mat.block(off[i], off[j], dims[i], dims[j]) = blk;
    }
    act.mats[e] = mat;
  }
  act.validate(prod);
  return act;
}

RowZ SubAlgebra::project(const FiniteAlgebra& ambient, const RowZ& x) const {
  auto y = solve_row(inclusion, x, ambient.base_mod());
  if (!y) throw ZpError("element outside subalgebra");
  return *y;
}

namespace {

FiniteAlgebra algebra_on_rows(const FiniteAlgebra& a, const MatZ& rows) {
  // structure constants of the subalgebra spanned by `rows` (must be closed)
  Mod m = a.base_mod();
  const int k = static_cast<int>(rows.rows());
  MatZ mult(k * k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto c = solve_row(rows, a.mul(rows.row(i), rows.row(j)), m);
      if (!c) throw ZpError("subalgebra rows not multiplicatively closed");
      mult.row(i * k + j) = *c;
    }
  auto unit = solve_row(rows, a.one(), m);
  if (!unit) throw ZpError("subalgebra does not contain 1");
  return FiniteAlgebra::from_structure(a.p(), mult, *unit);
}

}  // namespace

SubAlgebra fixed_subring(const FiniteAlgebra& a, const AlgebraAction& action,
                         const std::vector<int>& subgroup_elements) {
  Mod m = a.base_mod();
  const int d = a.dim();
  MatZ stacked(d, static_cast<Eigen::Index>(subgroup_elements.size()) * d);
  for (size_t t = 0; t < subgroup_elements.size(); ++t)
    stacked.middleCols(t * d, d) = reduce(action.mats[subgroup_elements[t]] - identity(d), m);
  MatZ fixed = kernel_basis(stacked, m);
  SubAlgebra sub;
  sub.inclusion = fixed;
  sub.algebra = algebra_on_rows(a, fixed);
  return sub;
}

SubAlgebra fixed_subring(const FiniteAlgebra& a, const AlgebraAction& action) {
  std::vector<int> all(action.group.order());
  for (int i = 0; i < action.group.order(); ++i) all[i] = i;
  return fixed_subring(a, action, all);
}

SubAlgebra subalgebra_generated(const FiniteAlgebra& a, const MatZ& seed_rows) {
  Mod m = a.base_mod();
  MatZ span(seed_rows.rows() + 1, a.dim());
  span.row(0) = a.one();
  for (Eigen::Index i = 0; i < seed_rows.rows(); ++i) span.row(i + 1) = seed_rows.row(i);
  span = howell_form(span, m);
  while (true) {
    std::vector<RowZ> next;
    for (Eigen::Index i = 0; i < span.rows(); ++i)
      for (Eigen::Index j = 0; j <= i; ++j) next.push_back(a.mul(span.row(i), span.row(j)));
    MatZ grown(span.rows() + next.size(), a.dim());
    grown.topRows(span.rows()) = span;
    for (size_t i = 0; i < next.size(); ++i) grown.row(span.rows() + i) = next[i];
    grown = howell_form(grown, m);
    if (grown.rows() == span.rows()) break;
    span = grown;
  }
  SubAlgebra sub;
  sub.inclusion = span;
  sub.algebra = algebra_on_rows(a, span);
  return sub;
}

RowZ norm_element(const FiniteAlgebra& a, const AlgebraAction& action, const RowZ& x,
                  const std::vector<int>& h_elements) {
  Mod m = a.base_mod();
  RowZ out = a.one();
  for (int rep : left_coset_reps(action.group, h_elements))
    out = a.mul(out, reduce(x * action.mats[rep], m));
  return out;
}

namespace {

std::vector<RowZ> all_idempotents(const FiniteAlgebra& a) {
  std::vector<RowZ> out;
  for (Int code = 0; code < a.element_count(); ++code) {
    RowZ x = a.decode(code);
    if (a.mul(x, x) == x && !x.isZero()) out.push_back(x);
  }
  return out;
}

// --- polynomial helpers over F_p (for the idempotent splitting fallback) ----

using Poly = std::vector<Int>;  // coefficients, lowest first, normalized

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_rem(Poly a, const Poly& b, Int p) {
  const int db = static_cast<int>(b.size()) - 1;
  Int lead_inv = inv_mod(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    Int q = mod_pos(a.back() * lead_inv, p);
    int shift = static_cast<int>(a.size()) - 1 - db;
    for (int i = 0; i <= db; ++i)
      a[shift + i] = mod_pos(a[shift + i] - q * b[i], p);
    a = poly_trim(std::move(a));
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, Int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = mod_pos(c[i + j] + a[i] * b[j], p);
  return poly_trim(std::move(c));
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, Int p) {
  Poly q;
  const int db = static_cast<int>(b.size()) - 1;
  Int lead_inv = inv_mod(b.back(), p);
  if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - b.size() + 1, 0);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    Int c = mod_pos(a.back() * lead_inv, p);
    int shift = static_cast<int>(a.size()) - 1 - db;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[shift + i] = mod_pos(a[shift + i] - c * b[i], p);
    a = poly_trim(std::move(a));
  }
  return {poly_trim(std::move(q)), a};
}

Poly poly_gcd(Poly a, Poly b, Int p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Int inv = inv_mod(a.back(), p);
    for (auto& c : a) c = mod_pos(c * inv, p);
  }
  return a;
}

// u with u*f1 = 1 mod f2 (f1, f2 coprime)
Poly poly_inverse_mod(const Poly& f1, const Poly& f2, Int p) {
  Poly r0 = f2, r1 = poly_rem(f1, f2, p);
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = poly_divmod(r0, r1, p);
    Poly t2 = t0;
    Poly qt1 = poly_mul(q, t1, p);
    t2.resize(std::max(t2.size(), qt1.size()), 0);
    for (size_t i = 0; i < qt1.size(); ++i) t2[i] = mod_pos(t2[i] - qt1[i], p);
    t2 = poly_trim(std::move(t2));
    t0 = t1;
    t1 = t2;
    r0 = r1;
    r1 = r2;
  }
  if (r0.size() != 1) throw ZpError("polynomials not coprime");
  Int inv = inv_mod(r0[0], p);
  for (auto& c : t0) c = mod_pos(c * inv, p);
  return t0;
}

// minimal polynomial of x inside the unital subring e*A (unit e)
Poly minimal_poly(const FiniteAlgebra& a, const RowZ& e, const RowZ& x) {
  Mod m = a.base_mod();
  std::vector<RowZ> pows = {e};
  while (true) {
    MatZ rows(pows.size(), a.dim());
    for (size_t i = 0; i < pows.size(); ++i) rows.row(i) = pows[i];
    // look for a dependency ending at the newest power
    RowZ next = a.mul(pows.back(), x);
    auto sol = solve_row(rows, next, m);
    if (sol) {
      Poly mp(pows.size() + 1, 0);
      for (size_t i = 0; i < pows.size(); ++i) mp[i] = mod_pos(-(*sol)(i), m.n);
      mp[pows.size()] = 1;
      return mp;
    }
    pows.push_back(next);
    if (static_cast<int>(pows.size()) > a.dim() + 1)
      throw ZpError("minimal polynomial search exceeded the dimension");
  }
}

RowZ eval_poly_at(const FiniteAlgebra& a, const RowZ& e, const RowZ& x, const Poly& f) {
  RowZ acc = a.zero();
  RowZ xp = e;  // x^0 in the subring with unit e
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0) acc = a.add(acc, reduce(f[i] * xp, a.base_mod()));
    xp = a.mul(xp, x);
  }
  return acc;
}

// primitive idempotents by splitting along coprime factors of minimal
// polynomials; used above the exhaustive-search bound
std::vector<RowZ> idempotents_by_splitting(const FiniteAlgebra& a) {
  Int p = a.p();
  std::vector<RowZ> pieces = {a.one()};
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t t = 0; t < pieces.size() && !progress; ++t) {
      RowZ e = pieces[t];
      for (int i = 0; i < a.dim() && !progress; ++i) {
        RowZ x = a.mul(e, a.basis(i));
        Poly mp = minimal_poly(a, e, x);
        if (mp.size() <= 2) continue;  // linear: no splitting from this element
        // find a coprime factorization mp = f1 * f2
        int deg = static_cast<int>(mp.size()) - 1;
        for (int d1 = 1; d1 < deg && !progress; ++d1) {
          Int total = 1;
          for (int k = 0; k < d1; ++k) total *= p;
          for (Int code = 0; code < total && !progress; ++code) {
            Poly f1(d1 + 1, 0);
            Int c = code;
            for (int k = 0; k < d1; ++k) {
              f1[k] = c % p;
              c /= p;
            }
            f1[d1] = 1;
            auto [q, r] = poly_divmod(mp, f1, p);
            if (!r.empty()) continue;
            if (poly_gcd(f1, q, p).size() != 1) continue;
            // CRT idempotent: e1 = (u*f1)(x) with u*f1 = 1 mod f2
            Poly u = poly_inverse_mod(f1, q, p);
            RowZ e1 = eval_poly_at(a, e, x, poly_mul(u, f1, p));
            if (a.mul(e1, e1) != e1) throw ZpError("splitting produced a non-idempotent");
            if (e1.isZero() || e1 == e) continue;
            RowZ e2 = a.add(e, a.neg(e1));
            pieces[t] = e1;
            pieces.push_back(e2);
            progress = true;
          }
        }
      }
    }
  }
  return pieces;
}

}  // namespace

ResidueDecomposition residue_decomposition(const FiniteAlgebra& a) {
  return residue_decomposition(a, AlgebraAction::trivial(FiniteGroup::trivial(), a));
}

ResidueDecomposition residue_decomposition(const FiniteAlgebra& a,
                                           const AlgebraAction& action) {
  Mod m = a.base_mod();
  ResidueDecomposition rd;
  rd.nilradical = a.nilradical_basis();

  // present A_red = A/N
  Subquotient q(identity(a.dim()), rd.nilradical, m);
  const int dred = q.rank();
  rd.from_reduced = q.basis();
  rd.to_reduced = MatZ(a.dim(), dred);
  for (int i = 0; i < a.dim(); ++i) rd.to_reduced.row(i) = q.coords(a.basis(i));
  MatZ mult(dred * dred, dred);
  for (int i = 0; i < dred; ++i)
    for (int j = 0; j < dred; ++j)
      mult.row(i * dred + j) = q.coords(a.mul(q.basis_row(i), q.basis_row(j)));
  rd.reduced = FiniteAlgebra::from_structure(a.p(), mult, q.coords(a.one()));

  // primitive idempotents of the reduced algebra: exhaustive scan at small
  // sizes, minimal-polynomial splitting beyond the bound
  if (rd.reduced.element_count() <= (1 << 16)) {
    std::vector<RowZ> idem = all_idempotents(rd.reduced);
    for (const RowZ& e : idem) {
      bool primitive = true;
      for (const RowZ& f : idem)
        if (f != e && rd.reduced.mul(f, e) == f) primitive = false;
      if (primitive) rd.idempotents.push_back(e);
    }
  } else {
    rd.idempotents = idempotents_by_splitting(rd.reduced);
  }
  // orthogonality and completeness
  RowZ sum = rd.reduced.zero();
  for (auto& e : rd.idempotents) sum = rd.reduced.add(sum, e);
  if (sum != rd.reduced.one()) throw ZpError("idempotents do not sum to 1");
  for (size_t i = 0; i < rd.idempotents.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (!rd.reduced.mul(rd.idempotents[i], rd.idempotents[j]).isZero())
        throw ZpError("idempotents not orthogonal");

  // factor fields k_i = A_red * e_i
  for (const RowZ& e : rd.idempotents) {
    std::vector<RowZ> span;
    for (int i = 0; i < dred; ++i) span.push_back(rd.reduced.mul(rd.reduced.basis(i), e));
    MatZ s(span.size(), dred);
    for (size_t i = 0; i < span.size(); ++i) s.row(i) = span[i];
    MatZ basis = howell_form(s, m);
    const int di = static_cast<int>(basis.rows());
    MatZ fm(di * di, di);
    for (int i = 0; i < di; ++i)
      for (int j = 0; j < di; ++j) {
        auto c = solve_row(basis, rd.reduced.mul(basis.row(i), basis.row(j)), m);
        if (!c) throw ZpError("factor not closed");
        fm.row(i * di + j) = *c;
      }
    auto unit = solve_row(basis, e, m);
    FiniteAlgebra field = FiniteAlgebra::from_structure(a.p(), fm, *unit);
    // residue factors must be fields
    for (Int code = 1; code < field.element_count(); ++code)
      if (!field.is_unit(field.decode(code))) throw ZpError("residue factor is not a field");
    rd.factors.push_back(field);
    rd.factor_basis.push_back(basis);
    MatZ tf(dred, di);
    for (int i = 0; i < dred; ++i) {
      auto c = solve_row(basis, rd.reduced.mul(rd.reduced.basis(i), e), m);
      tf.row(i) = *c;
    }
    rd.to_factor.push_back(tf);
  }

  // the action permutes the primitive idempotents
  const int ng = action.group.order();
  rd.factor_perm.assign(ng, std::vector<int>(rd.idempotents.size(), -1));
  for (int g = 0; g < ng; ++g) {
    // induced action on A_red
    MatZ red_act(dred, dred);
    for (int i = 0; i < dred; ++i)
      red_act.row(i) = q.coords(reduce(q.basis_row(i) * action.mats[g], m));
    for (size_t i = 0; i < rd.idempotents.size(); ++i) {
      RowZ img = reduce(rd.idempotents[i] * red_act, m);
      for (size_t j = 0; j < rd.idempotents.size(); ++j)
        if (img == rd.idempotents[j]) rd.factor_perm[g][i] = static_cast<int>(j);
      if (rd.factor_perm[g][i] < 0) throw ZpError("action does not permute idempotents");
    }
  }
  return rd;
}

RowZ ResidueDecomposition::to_product(const FiniteAlgebra& a, const RowZ& x) const {
  Mod m = a.base_mod();
  RowZ xr = reduce(x * to_reduced, m);
  RowZ out = RowZ::Zero(product_dim());
  int off = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    out.segment(off, factors[i].dim()) = reduce(xr * to_factor[i], m);
    off += factors[i].dim();
  }
  return out;
}

int ResidueDecomposition::product_dim() const {
  int d = 0;
  for (auto& f : factors) d += f.dim();
  return d;
}

InducedAlgebra induced_algebra(const FiniteGroup& g, const Subgroup& h,
                               const FiniteAlgebra& a, const AlgebraAction& h_action) {
  h_action.validate(a);
  if (!(h_action.group == h.group)) throw ZpError("induced_algebra: action group mismatch");
  InducedAlgebra out;
  out.cosets = right_cosets(g, h);
  const int nc = static_cast<int>(out.cosets.reps.size());
  const int d = a.dim();
  std::vector<FiniteAlgebra> copies(nc, a);
  out.algebra = FiniteAlgebra::product(copies);

  out.action.group = g;
  out.action.mats.resize(g.order());
  for (int e = 0; e < g.order(); ++e) {
    MatZ mat = MatZ::Zero(nc * d, nc * d);
    for (int c = 0; c < nc; ++c) {
      // basis element (c, i): value e_i at rep t_c. Under e it becomes the
      // function supported at coset c'' with t_{c''} e = h t_c.
      int x = g.mul(out.cosets.reps[c], g.inv(e));  // t_c * e^{-1}
      int cpp = out.cosets.coset_of[x];
      int he = g.mul(out.cosets.reps[cpp], e);  // = h * t_c
      int hidx = out.cosets.h_part[he];
      if (out.cosets.coset_of[he] != c) throw ZpError("coset bookkeeping error");
      mat.block(c * d, cpp * d, d, d) = h_action.mats[hidx];
    }
    out.action.mats[e] = mat;
  }
  out.action.validate(out.algebra);
  return out;
}

}  // namespace wittlift
