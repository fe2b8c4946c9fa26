#include "wittlift/gmodule.hpp"

namespace wittlift {

GModule::GModule(FiniteGroup g, Mod m, MatZ relations, std::vector<MatZ> action)
    : group_(std::move(g)), mod_(m), act_(std::move(action)) {
  if (act_.empty() || act_[0].rows() != act_[0].cols())
    throw ZpError("module action matrices malformed");
  gens_ = static_cast<int>(act_[0].rows());
  if (relations.rows() == 0) relations = MatZ(0, gens_);
  rel_ = howell_form(reduce(std::move(relations), mod_), mod_);
  for (auto& a : act_) a = reduce(std::move(a), mod_);
  validate();
  sq_ = std::make_shared<Subquotient>(identity(gens_), rel_, mod_);
}

void GModule::validate() const {
  if (static_cast<int>(act_.size()) != group_.order())
    throw ZpError("module action table size mismatch");
  for (int g = 0; g < group_.order(); ++g) {
    if (act_[g].rows() != gens_ || act_[g].cols() != gens_)
      throw ZpError("module action matrix shape mismatch");
    for (Eigen::Index i = 0; i < rel_.rows(); ++i)
      if (!span_contains(rel_, reduce(rel_.row(i) * act_[g], mod_), mod_))
        throw ZpError("relations not stable under the action");
  }
  for (int g = 0; g < group_.order(); ++g)
    for (int h = 0; h < group_.order(); ++h) {
      MatZ lhs = mul_mod(act_[h], act_[g], mod_);
      const MatZ& rhs = act_[group_.mul(g, h)];
      for (int i = 0; i < gens_; ++i)
        if (!span_contains(rel_, reduce(lhs.row(i) - rhs.row(i), mod_), mod_))
          throw ZpError("module action is not a homomorphism");
    }
  const MatZ& id = act_[group_.identity()];
  for (int i = 0; i < gens_; ++i) {
    RowZ diff = reduce(id.row(i) - RowZ::Unit(gens_, i).eval(), mod_);
    if (!span_contains(rel_, diff, mod_))
      throw ZpError("identity must act trivially on the module");
  }
}

RowZ GModule::act(int g, const RowZ& x) const { return reduce(x * act_[g], mod_); }

RowZ GModule::canon(const RowZ& x) const { return coset_reduce(rel_, x, mod_); }

bool GModule::elem_eq(const RowZ& x, const RowZ& y) const {
  return canon(reduce(x - y, mod_)).isZero();
}

bool GModule::is_relation(const RowZ& x) const { return span_contains(rel_, x, mod_); }

const Subquotient& GModule::sq() const {
  if (!sq_) throw ZpError("module is not initialized");
  return *sq_;
}

Int GModule::order() const { return sq().order(); }

std::vector<RowZ> GModule::elements(Int limit) const { return sq().enumerate(limit); }

GModule GModule::trivial(const FiniteGroup& g, const Mod& m) {
  return free_module(g, m, std::vector<MatZ>(g.order(), identity(1)));
}

GModule GModule::free_module(const FiniteGroup& g, const Mod& m, std::vector<MatZ> action) {
  int k = action.empty() ? 0 : static_cast<int>(action[0].rows());
  return GModule(g, m, MatZ(0, k), std::move(action));
}

GModule GModule::character_module(const Character& chi, int power, int exponent_f,
                                  const Mod& ambient) {
  if (ambient.p != chi.mod.p) throw ZpError("character modulus mismatch");
  if (exponent_f < 1 || exponent_f > ambient.r)
    throw ZpError("character module exponent out of range");
  if (chi.mod.r < exponent_f) throw ZpError("character modulus smaller than the module");
  Int pf = 1;
  for (int i = 0; i < exponent_f; ++i) pf *= ambient.p;
  MatZ rel(0, 1);
  if (exponent_f < ambient.r) {
    rel = MatZ(1, 1);
    rel(0, 0) = pf;
  }
  std::vector<MatZ> action;
  for (int g = 0; g < chi.group.order(); ++g) {
    Int base = mod_pos(chi.values[g], pf);
    Int v = power >= 0 ? pow_mod(base, power, pf)
                       : pow_mod(inv_mod(base, pf), -static_cast<Int>(power), pf);
    MatZ a(1, 1);
    a(0, 0) = v;
    action.push_back(a);
  }
  return GModule(chi.group, ambient, rel, std::move(action));
}

GModule GModule::direct_sum(const GModule& a, const GModule& b) {
  if (!(a.group() == b.group()) || !(a.mod() == b.mod()))
    throw ZpError("direct sum over mismatched group or modulus");
  int k = a.gens() + b.gens();
  MatZ rel = MatZ::Zero(a.rel_.rows() + b.rel_.rows(), k);
  rel.block(0, 0, a.rel_.rows(), a.gens()) = a.rel_;
  rel.block(a.rel_.rows(), a.gens(), b.rel_.rows(), b.gens()) = b.rel_;
  std::vector<MatZ> action;
  for (int g = 0; g < a.group().order(); ++g) {
    MatZ m = MatZ::Zero(k, k);
    m.block(0, 0, a.gens(), a.gens()) = a.act_[g];
    m.block(a.gens(), a.gens(), b.gens(), b.gens()) = b.act_[g];
    action.push_back(m);
  }
  return GModule(a.group(), a.mod(), rel, std::move(action));
}

GModule GModule::restricted(const Subgroup& h) const {
  std::vector<MatZ> action;
  for (int i = 0; i < h.group.order(); ++i) action.push_back(act_[h.embed[i]]);
  return GModule(h.group, mod_, rel_, std::move(action));
}

GModule GModule::inflated(const FiniteGroup& big, const QuotientGroup& q) const {
  if (!(q.group == group_)) throw ZpError("inflation: quotient group mismatch");
  std::vector<MatZ> action;
  for (int g = 0; g < big.order(); ++g) action.push_back(act_[q.project[g]]);
  return GModule(big, mod_, rel_, std::move(action));
}

GModule GModule::raised(const Mod& bigger) const {
  if (bigger.p != mod_.p || bigger.r < mod_.r) throw ZpError("raised: bad modulus");
  if (bigger.r == mod_.r) return *this;
  MatZ rel(rel_.rows() + gens_, gens_);
  rel.topRows(rel_.rows()) = rel_;
  rel.bottomRows(gens_) = (mod_.n * identity(gens_).array()).matrix();
  return GModule(group_, bigger, rel, act_);
}

GModule GModule::quotient_by_p_power(int f) const {
  Int pf = 1;
  for (int i = 0; i < f; ++i) pf *= mod_.p;
  MatZ rel(rel_.rows() + gens_, gens_);
  rel.topRows(rel_.rows()) = rel_;
  rel.bottomRows(gens_) = (pf * identity(gens_).array()).matrix();
  return GModule(group_, mod_, rel, act_);
}

RowZ GModMap::apply(const RowZ& x) const { return reduce(x * mat, to.mod()); }

GModMap GModMap::then(const GModMap& next) const {
  GModMap out;
  out.from = from;
  out.to = next.to;
  out.mat = mul_mod(mat, next.mat, to.mod());
  return out;
}

void GModMap::validate() const {
  if (!(from.mod() == to.mod())) throw ZpError("module map across different moduli");
  if (!(from.group() == to.group())) throw ZpError("module map across different groups");
  if (mat.rows() != from.gens() || mat.cols() != to.gens())
    throw ZpError("module map shape mismatch");
  const Mod& m = to.mod();
  for (Eigen::Index i = 0; i < from.relations().rows(); ++i)
    if (!to.is_relation(reduce(from.relations().row(i) * mat, m)))
      throw ZpError("module map does not respect relations");
  for (int g = 0; g < from.group().order(); ++g) {
    MatZ lhs = mul_mod(from.action(g), mat, m);
    MatZ rhs = mul_mod(mat, to.action(g), m);
    for (int i = 0; i < from.gens(); ++i)
      if (!to.is_relation(reduce(lhs.row(i) - rhs.row(i), m)))
        throw ZpError("module map is not equivariant");
  }
}

GModMap GModMap::identity_map(const GModule& m) {
  GModMap f;
  f.from = m;
  f.to = m;
  f.mat = identity(m.gens());
  return f;
}

GModMap GModMap::zero_map(const GModule& from, const GModule& to) {
  GModMap f;
  f.from = from;
  f.to = to;
  f.mat = MatZ::Zero(from.gens(), to.gens());
  return f;
}

GModMap sum_inclusion(const GModule& a, const GModule& b, const GModule& sum, int which) {
  GModMap f;
  f.from = which == 0 ? a : b;
  f.to = sum;
  f.mat = MatZ::Zero(f.from.gens(), sum.gens());
  int off = which == 0 ? 0 : a.gens();
  f.mat.block(0, off, f.from.gens(), f.from.gens()) = identity(f.from.gens());
  return f;
}

GModMap sum_projection(const GModule& sum, const GModule& a, const GModule& b, int which) {
  GModMap f;
  f.from = sum;
  f.to = which == 0 ? a : b;
  f.mat = MatZ::Zero(sum.gens(), f.to.gens());
  int off = which == 0 ? 0 : a.gens();
  f.mat.block(off, 0, f.to.gens(), f.to.gens()) = identity(f.to.gens());
  return f;
}

HomModule hom_module(const GModule& m, const GModule& n) {
  const Mod& mod = m.mod();
  if (!(mod == n.mod()) || !(m.group() == n.group()))
    throw ZpError("hom module over mismatched data");
  const int km = m.gens(), kn = n.gens();
  const int flatdim = km * kn;
  const int nrel_m = static_cast<int>(m.relations().rows());
  const int nrel_n = static_cast<int>(n.relations().rows());

  // F defines a map iff rho * F lies in the relation span of N for every
  // relation rho of M; solve with slack coefficients for the N-relations.
  const int slack = nrel_m * nrel_n;
  MatZ cond = MatZ::Zero(flatdim + slack, std::max(1, nrel_m * kn));
  if (nrel_m > 0) {
    for (int t = 0; t < nrel_m; ++t)
      for (int i = 0; i < km; ++i)
        for (int j = 0; j < kn; ++j) cond(i * kn + j, t * kn + j) = m.relations()(t, i);
    for (int t = 0; t < nrel_m; ++t)
      for (int s = 0; s < nrel_n; ++s)
        for (int j = 0; j < kn; ++j)
          cond(flatdim + t * nrel_n + s, t * kn + j) = mod_pos(-n.relations()(s, j), mod.n);
  }
  MatZ gens;
  if (nrel_m == 0) {
    gens = identity(flatdim);
  } else {
    MatZ ker = kernel_basis(cond, mod);
    std::vector<RowZ> genrows;
    for (Eigen::Index i = 0; i < ker.rows(); ++i) {
      RowZ f = ker.row(i).head(flatdim);
      if (!f.isZero()) genrows.push_back(f);
    }
    gens = MatZ(genrows.size(), flatdim);
    for (size_t i = 0; i < genrows.size(); ++i) gens.row(i) = genrows[i];
  }

  // maps landing inside the relations of N induce the zero map
  MatZ zero_rows = MatZ::Zero(km * nrel_n, flatdim);
  for (int i = 0; i < km; ++i)
    for (int s = 0; s < nrel_n; ++s)
      for (int j = 0; j < kn; ++j) zero_rows(i * nrel_n + s, i * kn + j) = n.relations()(s, j);

  HomModule hm;
  hm.km = km;
  hm.kn = kn;
  hm.flat = Subquotient(gens, zero_rows, mod);

  const int rank = hm.flat.rank();
  MatZ rel = MatZ::Zero(rank, rank);
  for (int i = 0; i < rank; ++i) rel(i, i) = hm.flat.invariants()[i];
  std::vector<MatZ> action;
  for (int g = 0; g < m.group().order(); ++g) {
    MatZ a(rank, rank);
    int ginv = m.group().inv(g);
    for (int i = 0; i < rank; ++i) {
      MatZ f = hm.decode(RowZ::Unit(rank, i).eval());
      MatZ gf = mul_mod(mul_mod(m.action(ginv), f, mod), n.action(g), mod);
      a.row(i) = hm.encode(gf);
    }
    action.push_back(a);
  }
  hm.hom = GModule(m.group(), mod, rel, std::move(action));
  return hm;
}

RowZ HomModule::encode(const MatZ& f) const {
  RowZ flatrow(km * kn);
  for (int r = 0; r < km; ++r) flatrow.segment(r * kn, kn) = f.row(r);
  return flat.coords(flatrow);
}

MatZ HomModule::decode(const RowZ& coords) const {
  RowZ flatrow = flat.from_coords(coords);
  MatZ f(km, kn);
  for (int r = 0; r < km; ++r) f.row(r) = flatrow.segment(r * kn, kn);
  return f;
}

bool HomModule::represents_map(const MatZ& f) const {
  RowZ flatrow(km * kn);
  for (int r = 0; r < km; ++r) flatrow.segment(r * kn, kn) = f.row(r);
  return flat.contains(flatrow);
}

InducedModule induced_module(const FiniteGroup& g, const Subgroup& h, const GModule& m) {
  if (!(m.group() == h.group)) throw ZpError("induced module: group mismatch");
  InducedModule out;
  out.cosets = right_cosets(g, h);
  const int nc = static_cast<int>(out.cosets.reps.size());
  const int k = m.gens();
  out.base_gens = k;
  const Mod& mod = m.mod();

  const int nrel = static_cast<int>(m.relations().rows());
  MatZ rel = MatZ::Zero(nc * nrel, nc * k);
  for (int c = 0; c < nc; ++c) rel.block(c * nrel, c * k, nrel, k) = m.relations();

  std::vector<MatZ> action;
  for (int e = 0; e < g.order(); ++e) {
    MatZ a = MatZ::Zero(nc * k, nc * k);
    for (int c = 0; c < nc; ++c) {
      int x = g.mul(out.cosets.reps[c], g.inv(e));  // t_c * e^{-1}
      int cpp = out.cosets.coset_of[x];
      int he = g.mul(out.cosets.reps[cpp], e);
      int hidx = out.cosets.h_part[he];
      a.block(c * k, cpp * k, k, k) = m.action(hidx);
    }
    action.push_back(a);
  }
  out.module = GModule(g, mod, rel, std::move(action));
  out.base = m;

  out.eval0 = MatZ::Zero(nc * k, k);
  out.eval0.block(0, 0, k, k) = identity(k);
  return out;
}

MatZ InducedModule::trace(const GModule& m_over_g) const {
  const int k = base_gens;
  const int nc = static_cast<int>(cosets.reps.size());
  MatZ t(nc * k, k);
  for (int c = 0; c < nc; ++c) {
    int tinv = m_over_g.group().inv(cosets.reps[c]);
    t.block(c * k, 0, k, k) = m_over_g.action(tinv);
  }
  return t;
}

RowZ Pairing::pair(const RowZ& x, const RowZ& y) const {
  const Mod& m = target.mod();
  RowZ out = RowZ::Zero(target.gens());
  for (int i = 0; i < a.gens(); ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < b.gens(); ++j)
      if (y(j) != 0) out += x(i) * y(j) * tensor.row(i * b.gens() + j);
  }
  return reduce(std::move(out), m);
}

void Pairing::validate() const {
  const Mod& m = target.mod();
  if (!(a.mod() == m) || !(b.mod() == m)) throw ZpError("pairing modulus mismatch");
  for (Eigen::Index t = 0; t < a.relations().rows(); ++t)
    for (int j = 0; j < b.gens(); ++j)
      if (!target.is_relation(pair(a.relations().row(t), RowZ::Unit(b.gens(), j).eval())))
        throw ZpError("pairing not defined modulo relations (left)");
  for (Eigen::Index t = 0; t < b.relations().rows(); ++t)
    for (int i = 0; i < a.gens(); ++i)
      if (!target.is_relation(pair(RowZ::Unit(a.gens(), i).eval(), b.relations().row(t))))
        throw ZpError("pairing not defined modulo relations (right)");
  for (int g = 0; g < a.group().order(); ++g)
    for (int i = 0; i < a.gens(); ++i)
      for (int j = 0; j < b.gens(); ++j) {
        RowZ lhs = pair(a.act(g, RowZ::Unit(a.gens(), i).eval()),
                        b.act(g, RowZ::Unit(b.gens(), j).eval()));
        RowZ rhs = target.act(g, pair(RowZ::Unit(a.gens(), i).eval(),
                                      RowZ::Unit(b.gens(), j).eval()));
        if (!target.elem_eq(lhs, rhs)) throw ZpError("pairing is not equivariant");
      }
}

}  // namespace wittlift
