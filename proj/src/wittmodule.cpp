#include "wittlift/wittmodule.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wittlift {

WittRing::Elem WittModule::generator_elem(int t) const {
  auto [j, i] = genlab_[t];
  WittRing::Elem e = ring_.zero();
  e(j, i) = 1;
  return e;
}

RowZ WittModule::coords_perfect(const WittRing::Elem& x) const {
  const FiniteAlgebra& a = ring_.coeff();
  const int r = ring_.length();
  const int d = a.dim();
  RowZ c = RowZ::Zero(d);
  WittRing::Elem y = x;
  Int pl = 1;
  for (int l = 0; l < r; ++l) {
    RowZ digit = y.row(0);
    c += pl * digit;
    // subtract sum_i digit_i tau(b_i)
    WittRing::Elem s = ring_.zero();
    for (int i = 0; i < d; ++i)
      if (digit(i) != 0)
        s = ring_.add(s, ring_.scalar(digit(i), ring_.teichmuller(a.basis(i))));
    y = ring_.sub(y, s);
    if (!y.row(0).isZero()) throw ZpError("witt coordinates: digit extraction failed");
    if (l + 1 == r) break;
    // divide by p via the inverse Frobenius
    WittRing::Elem u = ring_.zero();
    for (int j = 0; j + 1 < r; ++j)
      u.row(j) = reduce(y.row(j + 1) * frob_inv_, a.base_mod());
    if (ring_.scalar(a.p(), u) != y) throw ZpError("witt coordinates: p-division failed");
    y = u;
    pl *= a.p();
  }
  return reduce(c, ambient_);
}

RowZ WittModule::coords(const WittRing::Elem& x) const {
  if (perfect_) {
    RowZ c = coords_perfect(x);
    if (element(c) != x) throw ZpError("witt coordinates failed verification");
    return c;
  }
  auto it = table_.find(ring_.encode(x));
  if (it == table_.end()) throw ZpError("witt coordinates: element not in table");
  return reduce(it->second, ambient_);
}

WittRing::Elem WittModule::element(const RowZ& c) const {
  if (c.cols() != gens()) throw ZpError("witt element: bad coordinate length");
  WittRing::Elem acc = ring_.zero();
  for (int t = 0; t < gens(); ++t)
    if (c(t) != 0) acc = ring_.add(acc, ring_.scalar(c(t), generator_elem(t)));
  return acc;
}

WittModule::WittModule(WittRing ring, AlgebraAction action, Character chi, int twist_power,
                       const Mod& ambient, Int enum_limit)
    : ring_(std::move(ring)),
      action_(std::move(action)),
      chi_(std::move(chi)),
      power_(twist_power),
      ambient_(ambient) {
  const FiniteAlgebra& a = ring_.coeff();
  const int r = ring_.length();
  const int d = a.dim();
  action_.validate(a);
  chi_.validate();
  if (!(action_.group == chi_.group)) throw ZpError("witt module: group mismatch");
  if (chi_.mod.p != a.p() || chi_.mod.r < r)
    throw ZpError("witt module: character modulus must be at least p^r");
  if (ambient_.p != a.p() || ambient_.r < r)
    throw ZpError("witt module: ambient modulus too small");
  Int pr = 1;
  for (int i = 0; i < r; ++i) pr *= a.p();
  Mod level = Mod::make(pr);

  perfect_ = a.is_perfect();
  MatZ relations;
  if (perfect_) {
    for (int i = 0; i < d; ++i) genlab_.emplace_back(0, i);
    MatZ f = a.frobenius_matrix();
    frob_inv_ = MatZ(d, d);
    for (int i = 0; i < d; ++i) {
      auto s = solve_row(f, RowZ::Unit(d, i).eval(), a.base_mod());
      if (!s) throw ZpError("witt module: Frobenius not invertible on perfect algebra");
      frob_inv_.row(i) = *s;
    }
    relations = MatZ(0, d);
  } else {
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < d; ++i) genlab_.emplace_back(j, i);
    const int n = static_cast<int>(genlab_.size());
    Int total = 1;
    for (int t = 0; t < n; ++t) {
      if (total > enum_limit / pr + 1) throw ZpError("witt module enumeration over limit");
      total *= pr;
    }
    if (total > enum_limit) throw ZpError("witt module enumeration over limit");
    std::vector<WittRing::Elem> gel;
    for (int t = 0; t < n; ++t) gel.push_back(generator_elem(t));
    std::vector<Int> cnt(n, 0);
    WittRing::Elem current = ring_.zero();
    const Int zero_code = ring_.encode(ring_.zero());
    std::vector<RowZ> relrows;
    for (Int step = 0;; ++step) {
      Int code = ring_.encode(current);
      if (table_.find(code) == table_.end()) {
        RowZ tup(n);
        for (int t = 0; t < n; ++t) tup(t) = cnt[t];
        table_.emplace(code, std::move(tup));
      }
      if (code == zero_code && step > 0) {
        RowZ tup(n);
        for (int t = 0; t < n; ++t) tup(t) = cnt[t];
        relrows.push_back(std::move(tup));
      }
      int s = 0;
      for (; s < n; ++s) {
        ++cnt[s];
        current = ring_.add(current, gel[s]);
        if (cnt[s] < pr) break;
        cnt[s] = 0;
      }
      if (s == n) break;
    }
    if (static_cast<Int>(table_.size()) != ring_.element_count())
      throw ZpError("witt module generators fail to generate");
    relations = MatZ(relrows.size(), n);
    for (size_t i = 0; i < relrows.size(); ++i) relations.row(i) = relrows[i];
    relations = howell_form(relations, level);
  }

  const int n = static_cast<int>(genlab_.size());
  if (ambient_.r > r) {
    MatZ more(relations.rows() + n, n);
    more.topRows(relations.rows()) = relations;
    more.bottomRows(n) = (pr * identity(n).array()).matrix();
    relations = std::move(more);
  }

  std::vector<MatZ> mats;
  for (int g = 0; g < action_.group.order(); ++g) {
    Int tw = mod_pos(chi_.values[g], pr);
    Int twp = power_ >= 0 ? pow_mod(tw, power_, pr)
                          : pow_mod(inv_mod(tw, pr), -static_cast<Int>(power_), pr);
    MatZ m(n, n);
    for (int t = 0; t < n; ++t) {
      WittRing::Elem moved =
          ring_.scalar(twp, ring_.map_coeffs(action_.mats[g], generator_elem(t)));
      if (perfect_) {
        m.row(t) = coords_perfect(moved);
      } else {
        auto it = table_.find(ring_.encode(moved));
        if (it == table_.end()) throw ZpError("witt module action left the table");
        m.row(t) = reduce(it->second, ambient_);
      }
    }
    mats.push_back(m);
  }
  gm_ = GModule(action_.group, ambient_, relations, std::move(mats));
}

GModMap WittModule::frobenius_map() const {
  GModMap f;
  f.from = gm_;
  f.to = gm_;
  f.mat = MatZ(gens(), gens());
  for (int t = 0; t < gens(); ++t)
    f.mat.row(t) = coords(ring_.frobenius(generator_elem(t)));
  f.validate();
  return f;
}

namespace {

std::map<std::string, std::shared_ptr<const WittModule>> g_wm_cache;
std::mutex g_wm_mutex;

}  // namespace

std::shared_ptr<const WittModule> witt_module_cached(const FiniteAlgebra& a, int r,
                                                     const AlgebraAction& action,
                                                     const Character& chi, int power,
                                                     const Mod& ambient) {
  std::ostringstream key;
  key << a.p() << '|' << a.dim() << '|' << r << '|' << power << '|' << ambient.n << '|';
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) key << a.mul(a.basis(i), a.basis(j))(k) << ',';
  for (int k = 0; k < a.dim(); ++k) key << a.one()(k) << ',';
  key << '|' << action.group.order() << '|';
  for (auto& m : action.mats)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) key << m(i, j) << ',';
  key << '|' << chi.mod.n << '|';
  for (Int v : chi.values) key << v << ',';
  std::string k = key.str();
  std::lock_guard<std::mutex> lock(g_wm_mutex);
  auto it = g_wm_cache.find(k);
  if (it != g_wm_cache.end()) return it->second;
  auto ptr = std::make_shared<const WittModule>(WittRing(a, r), action, chi, power, ambient);
  g_wm_cache[k] = ptr;
  return ptr;
}

namespace {

void check_compatible(const WittModule& a, const WittModule& b) {
  if (!(a.ambient() == b.ambient())) throw ZpError("witt map: ambient modulus mismatch");
  if (!(a.group_action().group == b.group_action().group))
    throw ZpError("witt map: group mismatch");
}

}  // namespace

GModMap truncation_map(const WittModule& from, const WittModule& to) {
  check_compatible(from, to);
  if (to.ring().length() >= from.ring().length())
    throw ZpError("truncation map: target must be shorter");
  GModMap f;
  f.from = from.gmodule();
  f.to = to.gmodule();
  f.mat = MatZ(from.gens(), to.gens());
  for (int t = 0; t < from.gens(); ++t)
    f.mat.row(t) =
        to.coords(from.ring().truncate(from.generator_elem(t), to.ring().length()));
  f.validate();
  return f;
}

GModMap verschiebung_map(const WittModule& from, const WittModule& to) {
  check_compatible(from, to);
  int k = to.ring().length() - from.ring().length();
  if (k <= 0) throw ZpError("verschiebung map: target must be longer");
  GModMap f;
  f.from = from.gmodule();
  f.to = to.gmodule();
  f.mat = MatZ(from.gens(), to.gens());
  for (int t = 0; t < from.gens(); ++t)
    f.mat.row(t) = to.coords(to.ring().verschiebung_in(from.generator_elem(t), k));
  f.validate();
  return f;
}

GModMap algebra_push_map(const WittModule& from, const WittModule& to, const MatZ& alg_map) {
  check_compatible(from, to);
  if (from.ring().length() != to.ring().length())
    throw ZpError("algebra push map: length mismatch");
  GModMap f;
  f.from = from.gmodule();
  f.to = to.gmodule();
  f.mat = MatZ(from.gens(), to.gens());
  for (int t = 0; t < from.gens(); ++t)
    f.mat.row(t) = to.coords(from.ring().map_coeffs(alg_map, from.generator_elem(t)));
  f.validate();
  return f;
}

Pairing witt_mult_pairing(const WittModule& a, const WittModule& b,
                          const WittModule& target) {
  check_compatible(a, b);
  check_compatible(a, target);
  if (a.twist_power() + b.twist_power() != target.twist_power())
    throw ZpError("witt pairing: twists do not add up");
  Pairing p;
  p.a = a.gmodule();
  p.b = b.gmodule();
  p.target = target.gmodule();
  p.tensor = MatZ(a.gens() * b.gens(), target.gens());
  for (int s = 0; s < a.gens(); ++s)
    for (int t = 0; t < b.gens(); ++t)
      p.tensor.row(s * b.gens() + t) =
          target.coords(a.ring().mul(a.generator_elem(s), b.generator_elem(t)));
  p.validate();
  return p;
}

}  // namespace wittlift
