#include "wittlift/extensions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace wittlift {

namespace {

MatZ vstack(const MatZ& a, const MatZ& b) {
  MatZ out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

RowZ coords_in(const GModule& ambient, const MatZ& gen_rows, const RowZ& v) {
  auto sol = solve_row(vstack(gen_rows, ambient.relations()), v, ambient.mod());
  if (!sol) throw ZpError("element outside submodule span");
  return sol->head(gen_rows.rows());
}

struct SubPresentation {
  GModule module;
  MatZ gen_rows;
};

SubPresentation present_submodule(const GModule& ambient, MatZ gen_rows) {
  const Mod& m = ambient.mod();
  const int n = static_cast<int>(gen_rows.rows());
  MatZ ker = kernel_basis(vstack(gen_rows, ambient.relations()), m);
  std::vector<RowZ> relrows;
  for (Eigen::Index i = 0; i < ker.rows(); ++i) {
    RowZ c = ker.row(i).head(n);
    if (!c.isZero()) relrows.push_back(c);
  }
  MatZ rel(relrows.size(), n);
  for (size_t i = 0; i < relrows.size(); ++i) rel.row(i) = relrows[i];

  std::vector<MatZ> action;
  for (int g = 0; g < ambient.group().order(); ++g) {
    MatZ a(n, n);
    for (int t = 0; t < n; ++t)
      a.row(t) = coords_in(ambient, gen_rows, ambient.act(g, gen_rows.row(t)));
    action.push_back(a);
  }
  SubPresentation sub;
  sub.module = GModule(ambient.group(), m, rel, std::move(action));
  sub.gen_rows = std::move(gen_rows);
  return sub;
}

}  // namespace

GModExtension split_extension(const GModule& b, const GModule& a) {
  GModExtension e;
  e.b = b;
  e.a = a;
  e.e = GModule::direct_sum(b, a);
  e.inj = sum_inclusion(b, a, e.e, 0);
  e.surj = sum_projection(e.e, b, a, 1);
  e.validate();
  return e;
}

GModExtension extension_from_cocycle(const GModule& b, const GModule& a,
                                     const HomModule& hom, const RowZ& cocycle) {
  const Mod& m = b.mod();
  const int kb = b.gens(), ka = a.gens();
  const int k = kb + ka;
  MatZ rel = MatZ::Zero(b.relations().rows() + a.relations().rows(), k);
  rel.block(0, 0, b.relations().rows(), kb) = b.relations();
  rel.block(b.relations().rows(), kb, a.relations().rows(), ka) = a.relations();
  std::vector<MatZ> action;
  for (int g = 0; g < b.group().order(); ++g) {
    MatZ zg = hom.decode(cochain_value(hom.hom, cocycle, {g}));  // ka x kb
    MatZ mat = MatZ::Zero(k, k);
    mat.block(0, 0, kb, kb) = b.action(g);
    mat.block(kb, kb, ka, ka) = a.action(g);
    mat.block(kb, 0, ka, kb) = mul_mod(a.action(g), zg, m);
    action.push_back(mat);
  }
  GModExtension e;
  e.b = b;
  e.a = a;
  e.e = GModule(b.group(), m, rel, std::move(action));
  e.inj = sum_inclusion(b, a, e.e, 0);
  e.surj = sum_projection(e.e, b, a, 1);
  e.validate();
  return e;
}

GModExtension direct_sum_extension(const GModExtension& e1, const GModExtension& e2) {
  GModExtension e;
  e.b = GModule::direct_sum(e1.b, e2.b);
  e.a = GModule::direct_sum(e1.a, e2.a);
  e.e = GModule::direct_sum(e1.e, e2.e);
  const int kb1 = e1.b.gens(), kb2 = e2.b.gens();
  const int ka1 = e1.a.gens(), ka2 = e2.a.gens();
  const int ke1 = e1.e.gens(), ke2 = e2.e.gens();
  e.inj.from = e.b;
  e.inj.to = e.e;
  e.inj.mat = MatZ::Zero(kb1 + kb2, ke1 + ke2);
  e.inj.mat.block(0, 0, kb1, ke1) = e1.inj.mat;
  e.inj.mat.block(kb1, ke1, kb2, ke2) = e2.inj.mat;
  e.surj.from = e.e;
  e.surj.to = e.a;
  e.surj.mat = MatZ::Zero(ke1 + ke2, ka1 + ka2);
  e.surj.mat.block(0, 0, ke1, ka1) = e1.surj.mat;
  e.surj.mat.block(ke1, ka1, ke2, ka2) = e2.surj.mat;
  e.validate();
  return e;
}

GModExtension pushforward(const GModMap& f, const GModExtension& e) {
  f.validate();
  if (f.from.gens() != e.b.gens()) throw ZpError("pushforward: map does not start at B");
  const GModule& bp = f.to;
  GModule ambient = GModule::direct_sum(bp, e.e);
  const int kbp = bp.gens(), ke = e.e.gens();
  MatZ extra(e.b.gens(), kbp + ke);
  for (int t = 0; t < e.b.gens(); ++t) {
    extra.row(t).head(kbp) = f.mat.row(t);
    extra.row(t).tail(ke) = reduce(-e.inj.mat.row(t), e.e.mod());
  }
  MatZ rel = vstack(ambient.relations(), extra);
  std::vector<MatZ> action;
  for (int g = 0; g < ambient.group().order(); ++g) action.push_back(ambient.action(g));
  GModExtension out;
  out.b = bp;
  out.a = e.a;
  out.e = GModule(ambient.group(), ambient.mod(), rel, std::move(action));
  out.inj.from = bp;
  out.inj.to = out.e;
  out.inj.mat = MatZ::Zero(kbp, kbp + ke);
  out.inj.mat.block(0, 0, kbp, kbp) = identity(kbp);
  out.surj.from = out.e;
  out.surj.to = e.a;
  out.surj.mat = MatZ::Zero(kbp + ke, e.a.gens());
  out.surj.mat.bottomRows(ke) = e.surj.mat;
  out.validate();
  return out;
}

GModExtension pullback(const GModMap& g, const GModExtension& e) {
  g.validate();
  if (g.to.gens() != e.a.gens()) throw ZpError("pullback: map does not hit A");
  const GModule& ap = g.from;
  GModule ambient = GModule::direct_sum(e.e, ap);
  const int ke = e.e.gens(), kap = ap.gens();
  MatZ sys(ke + kap + e.a.relations().rows(), e.a.gens());
  sys.topRows(ke) = e.surj.mat;
  sys.middleRows(ke, kap) = reduce(-g.mat, e.a.mod());
  sys.bottomRows(e.a.relations().rows()) = e.a.relations();
  MatZ ker = kernel_basis(sys, e.a.mod());
  std::vector<RowZ> rows;
  for (Eigen::Index i = 0; i < ker.rows(); ++i) {
    RowZ xy = ker.row(i).head(ke + kap);
    if (!xy.isZero()) rows.push_back(xy);
  }
  MatZ gen_rows(rows.size(), ke + kap);
  for (size_t i = 0; i < rows.size(); ++i) gen_rows.row(i) = rows[i];
  SubPresentation sub = present_submodule(ambient, gen_rows);

  GModExtension out;
  out.b = e.b;
  out.a = ap;
  out.e = sub.module;
  out.inj.from = e.b;
  out.inj.to = out.e;
  out.inj.mat = MatZ(e.b.gens(), out.e.gens());
  for (int t = 0; t < e.b.gens(); ++t) {
    RowZ v = RowZ::Zero(ke + kap);
    v.head(ke) = e.inj.mat.row(t);
    out.inj.mat.row(t) = coords_in(ambient, sub.gen_rows, v);
  }
  out.surj.from = out.e;
  out.surj.to = ap;
  out.surj.mat = MatZ(out.e.gens(), kap);
  for (int t = 0; t < out.e.gens(); ++t) out.surj.mat.row(t) = sub.gen_rows.row(t).tail(kap);
  out.validate();
  return out;
}

GModExtension baer_sum(const GModExtension& e1, const GModExtension& e2) {
  if (e1.a.gens() != e2.a.gens() || e1.b.gens() != e2.b.gens())
    throw ZpError("baer sum: mismatched ends");
  GModExtension dsum = direct_sum_extension(e1, e2);
  GModMap diag;
  diag.from = e1.a;
  diag.to = dsum.a;
  diag.mat = MatZ(e1.a.gens(), 2 * e1.a.gens());
  diag.mat << identity(e1.a.gens()), identity(e1.a.gens());
  GModExtension pulled = pullback(diag, dsum);
  GModMap add;
  add.from = pulled.b;
  add.to = e1.b;
  add.mat = MatZ(2 * e1.b.gens(), e1.b.gens());
  add.mat << identity(e1.b.gens()), identity(e1.b.gens());
  return pushforward(add, pulled);
}

ExtensionClassResult extension_class(const GModExtension& e, const HomModule& hom) {
  const Mod& m = e.e.mod();
  const int ka = e.a.gens(), ke = e.e.gens();
  const int nrel_a = static_cast<int>(e.a.relations().rows());
  const int nrel_e = static_cast<int>(e.e.relations().rows());

  const Int nS = static_cast<Int>(ka) * ke;
  const Int ny = static_cast<Int>(nrel_a) * nrel_e;
  const Int nz = static_cast<Int>(ka) * nrel_a;
  const Int colsI = static_cast<Int>(nrel_a) * ke;
  const Int colsII = static_cast<Int>(ka) * ka;
  MatZ sys = MatZ::Zero(nS + ny + nz, colsI + colsII);
  for (int t = 0; t < nrel_a; ++t)
    for (int i = 0; i < ka; ++i)
      for (int j = 0; j < ke; ++j) sys(i * ke + j, t * ke + j) = e.a.relations()(t, i);
  for (int t = 0; t < nrel_a; ++t)
    for (int s = 0; s < nrel_e; ++s)
      for (int j = 0; j < ke; ++j)
        sys(nS + static_cast<Int>(t) * nrel_e + s, t * ke + j) =
            mod_pos(-e.e.relations()(s, j), m.n);
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < ke; ++j)
      for (int c = 0; c < ka; ++c)
        sys(i * ke + j, colsI + i * ka + c) = e.surj.mat(j, c);
  for (int i = 0; i < ka; ++i)
    for (int t = 0; t < nrel_a; ++t)
      for (int c = 0; c < ka; ++c)
        sys(nS + ny + static_cast<Int>(i) * nrel_a + t, colsI + i * ka + c) =
            mod_pos(-e.a.relations()(t, c), m.n);
  RowZ rhs = RowZ::Zero(colsI + colsII);
  for (int i = 0; i < ka; ++i) rhs(colsI + i * ka + i) = 1;

  auto sol = solve_row(sys, rhs, m);
  ExtensionClassResult out;
  if (!sol) return out;
  out.geometrically_trivial = true;
  MatZ s(ka, ke);
  for (int i = 0; i < ka; ++i) s.row(i) = sol->segment(i * ke, ke);
  out.section = s;
  out.cocycle = extension_cocycle_from_section(e, hom, s);
  return out;
}

RowZ extension_cocycle_from_section(const GModExtension& e, const HomModule& hom,
                                    const MatZ& s) {
  const Mod& m = e.e.mod();
  const int ka = e.a.gens();
  const int go = e.e.group().order();
  RowZ cocycle = RowZ::Zero(static_cast<Int>(go) * hom.hom.gens());
  MatZ pull = vstack(e.inj.mat, e.e.relations());
  for (int g = 0; g < go; ++g) {
    MatZ gs = mul_mod(mul_mod(e.a.action(e.a.group().inv(g)), s, m), e.e.action(g), m);
    MatZ defect = reduce(gs - s, m);
    MatZ into_b(ka, e.b.gens());
    for (int i = 0; i < ka; ++i) {
      auto y = solve_row(pull, defect.row(i), m);
      if (!y) throw ZpError("extension class: defect not in the kernel");
      into_b.row(i) = y->head(e.b.gens());
    }
    cocycle.segment(static_cast<Int>(g) * hom.hom.gens(), hom.hom.gens()) =
        hom.encode(into_b);
  }
  return cocycle;
}

std::vector<MatZ> extension_automorphisms(const GModExtension& e) {
  HomModule hom = hom_module(e.a, e.b);
  CohomologyGroup h0(hom.hom, 0);
  std::vector<MatZ> out;
  for (auto& cls : h0.all_classes()) {
    MatZ h = hom.decode(cls);
    MatZ phi = reduce(identity(e.e.gens()) +
                          mul_mod(mul_mod(e.surj.mat, h, e.e.mod()), e.inj.mat, e.e.mod()),
                      e.e.mod());
    out.push_back(phi);
  }
  return out;
}

std::vector<MatZ> extension_automorphisms_brute(const GModExtension& e, Int limit) {
  const Mod& m = e.e.mod();
  const int k = e.e.gens();
  Int total = 1;
  for (int i = 0; i < k * k; ++i) {
    total *= m.n;
    if (total > limit) throw ZpError("automorphism search over limit");
  }
  auto elements = e.e.elements();
  std::set<std::vector<Int>> seen_actions;
  std::vector<MatZ> out;
  for (Int code = 0; code < total; ++code) {
    MatZ f(k, k);
    Int c = code;
    for (int i = 0; i < k * k; ++i) {
      f(i / k, i % k) = c % m.n;
      c /= m.n;
    }
    bool ok = true;
    for (Eigen::Index i = 0; i < e.e.relations().rows() && ok; ++i)
      ok = e.e.is_relation(reduce(e.e.relations().row(i) * f, m));
    for (int g = 0; g < e.e.group().order() && ok; ++g) {
      MatZ lhs = mul_mod(e.e.action(g), f, m);
      MatZ rhs = mul_mod(f, e.e.action(g), m);
      for (int i = 0; i < k && ok; ++i)
        ok = e.e.is_relation(reduce(lhs.row(i) - rhs.row(i), m));
    }
    for (int i = 0; i < e.b.gens() && ok; ++i)
      ok = e.e.is_relation(reduce(e.inj.mat.row(i) * f - e.inj.mat.row(i), m));
    if (ok) {
      MatZ fp = mul_mod(f, e.surj.mat, m);
      for (int i = 0; i < k && ok; ++i)
        ok = e.a.is_relation(reduce(fp.row(i) - e.surj.mat.row(i), m));
    }
    if (!ok) continue;
    std::vector<Int> key;
    std::set<std::vector<Int>> images;
    for (auto& x : elements) {
      RowZ y = e.e.canon(reduce(x * f, m));
      images.insert({y.data(), y.data() + y.cols()});
      key.insert(key.end(), y.data(), y.data() + y.cols());
    }
    if (images.size() != elements.size()) continue;
    if (seen_actions.insert(key).second) out.push_back(f);
  }
  return out;
}

int GAffineSpace::difference(int x, int y) const {
  for (size_t t = 0; t < tr_elems.size(); ++t)
    if (tact[y][t] == x) return static_cast<int>(t);
  throw ZpError("affine space: difference not found");
}

void GAffineSpace::validate() const {
  const int n = points;
  if (n == 0) throw ZpError("affine space must be nonempty");
  if (static_cast<int>(tr_elems.size()) != n)
    throw ZpError("translation count must equal point count");
  for (int x = 0; x < n; ++x) {
    std::set<int> hit;
    for (size_t t = 0; t < tr_elems.size(); ++t) hit.insert(tact[x][t]);
    if (static_cast<int>(hit.size()) != n)
      throw ZpError("translation action not simply transitive");
  }
  for (int g = 0; g < group.order(); ++g)
    for (int x = 0; x < n; ++x)
      for (size_t t = 0; t < tr_elems.size(); ++t) {
        RowZ gm = translations.canon(translations.act(g, tr_elems[t]));
        int tg = -1;
        for (size_t s = 0; s < tr_elems.size(); ++s)
          if (tr_elems[s] == gm) tg = static_cast<int>(s);
        if (tg < 0) throw ZpError("translation module not closed");
        if (gact[g][tact[x][t]] != tact[gact[g][x]][tg])
          throw ZpError("affine space: action not compatible with translations");
      }
}

GAffineSpace torsor_of_extension(const GModExtension& e) {
  if (e.a.gens() != 1 || e.a.relations().rows() != 0)
    throw ZpError("torsor: quotient must be free of rank one");
  for (int g = 0; g < e.a.group().order(); ++g)
    if (e.a.action(g) != identity(1)) throw ZpError("torsor: quotient must be trivial");

  GAffineSpace x;
  x.group = e.e.group();
  x.translations = e.b;
  x.tr_elems = e.b.elements();
  RowZ one = RowZ::Ones(1);
  std::vector<RowZ> pts;
  for (auto& v : e.e.elements())
    if (e.a.elem_eq(e.surj.apply(v), one)) pts.push_back(v);
  x.points = static_cast<int>(pts.size());
  auto find_pt = [&](const RowZ& v) {
    RowZ c = e.e.canon(v);
    for (int i = 0; i < x.points; ++i)
      if (pts[i] == c) return i;
    throw ZpError("torsor: point not found");
  };
  x.gact.assign(x.group.order(), std::vector<int>(x.points));
  for (int g = 0; g < x.group.order(); ++g)
    for (int i = 0; i < x.points; ++i) x.gact[g][i] = find_pt(e.e.act(g, pts[i]));
  x.tact.assign(x.points, std::vector<int>(x.tr_elems.size()));
  for (int i = 0; i < x.points; ++i)
    for (size_t t = 0; t < x.tr_elems.size(); ++t)
      x.tact[i][t] = find_pt(reduce(pts[i] + e.inj.apply(x.tr_elems[t]), e.e.mod()));
  x.validate();
  return x;
}

GModExtension modulify(const GAffineSpace& x) {
  x.validate();
  const GModule& b = x.translations;
  const Mod& m = b.mod();
  const int kb = b.gens();
  const int k = kb + 1;
  MatZ rel = MatZ::Zero(b.relations().rows(), k);
  rel.block(0, 0, b.relations().rows(), kb) = b.relations();
  std::vector<MatZ> action;
  const int x0 = 0;
  for (int g = 0; g < x.group.order(); ++g) {
    MatZ a = MatZ::Zero(k, k);
    a.block(0, 0, kb, kb) = b.action(g);
    int delta = x.difference(x.gact[g][x0], x0);
    a.row(kb).head(kb) = x.tr_elems[delta];
    a(kb, kb) = 1;
    action.push_back(a);
  }
  GModExtension out;
  out.b = b;
  out.a = GModule::trivial(x.group, m);
  out.e = GModule(x.group, m, rel, std::move(action));
  out.inj.from = b;
  out.inj.to = out.e;
  out.inj.mat = MatZ::Zero(kb, k);
  out.inj.mat.block(0, 0, kb, kb) = identity(kb);
  out.surj.from = out.e;
  out.surj.to = out.a;
  out.surj.mat = MatZ::Zero(k, 1);
  out.surj.mat(kb, 0) = 1;
  out.validate();
  return out;
}

GModExtension extension_of_torsor(const GAffineSpace& x) { return modulify(x); }

bool torsors_isomorphic(const GAffineSpace& x, const GAffineSpace& y) {
  if (x.points != y.points || x.tr_elems.size() != y.tr_elems.size()) return false;
  for (int y0 = 0; y0 < y.points; ++y0) {
    std::vector<int> phi(x.points, -1);
    phi[0] = y0;
    bool ok = true;
    for (size_t t = 0; t < x.tr_elems.size() && ok; ++t) {
      int ty = -1;
      for (size_t s = 0; s < y.tr_elems.size(); ++s)
        if (y.tr_elems[s] == x.tr_elems[t]) ty = static_cast<int>(s);
      if (ty < 0) {
        ok = false;
        break;
      }
      phi[x.tact[0][t]] = y.tact[y0][ty];
    }
    if (!ok) continue;
    for (int g = 0; g < x.group.order() && ok; ++g)
      for (int p = 0; p < x.points && ok; ++p)
        ok = phi[x.gact[g][p]] == y.gact[g][phi[p]];
    if (ok) return true;
  }
  return false;
}

RowZ obstruction_class(const ModuleSES& ses, const RowZ& z_over_quot) {
  const GModule& sub = ses.inj.from;
  const GModule& mid = ses.inj.to;
  const GModule& quot = ses.surj.to;
  const Mod& m = mid.mod();
  const int go = mid.group().order();

  MatZ lift_sys = vstack(ses.surj.mat, quot.relations());
  std::vector<RowZ> lifts(go);
  for (int g = 0; g < go; ++g) {
    auto sol = solve_row(lift_sys, z_over_quot.segment(g * quot.gens(), quot.gens()), m);
    if (!sol) throw ZpError("obstruction: value failed to lift");
    lifts[g] = sol->head(mid.gens());
  }
  MatZ pull = vstack(ses.inj.mat, mid.relations());
  RowZ out = RowZ::Zero(static_cast<Int>(go) * go * sub.gens());
  for (int g = 0; g < go; ++g)
    for (int h = 0; h < go; ++h) {
      RowZ defect =
          reduce(mid.act(g, lifts[h]) - lifts[mid.group().mul(g, h)] + lifts[g], m);
      auto sol = solve_row(pull, defect, m);
      if (!sol) throw ZpError("obstruction: defect not in the kernel");
      out.segment((static_cast<Int>(g) * go + h) * sub.gens(), sub.gens()) =
          sol->head(sub.gens());
    }
  return out;
}

bool lift_exists_brute(const ModuleSES& ses, const RowZ& z_over_quot, Int limit) {
  const GModule& sub = ses.inj.from;
  const GModule& mid = ses.inj.to;
  const GModule& quot = ses.surj.to;
  const Mod& m = mid.mod();
  const int go = mid.group().order();
  const int id = mid.group().identity();

  MatZ lift_sys = vstack(ses.surj.mat, quot.relations());
  std::vector<RowZ> base(go);
  for (int g = 0; g < go; ++g) {
    auto sol = solve_row(lift_sys, z_over_quot.segment(g * quot.gens(), quot.gens()), m);
    if (!sol) throw ZpError("brute lift: value failed to lift");
    base[g] = sol->head(mid.gens());
  }
  auto kelems = sub.elements();
  const Int fib = static_cast<Int>(kelems.size());
  std::vector<int> free_pos;
  for (int g = 0; g < go; ++g)
    if (g != id) free_pos.push_back(g);
  Int total = 1;
  for (size_t i = 0; i < free_pos.size(); ++i) {
    total *= fib;
    if (total > limit) throw ZpError("brute lift search over limit");
  }
  std::vector<RowZ> z(go);
  z[id] = RowZ::Zero(mid.gens());
  for (Int code = 0; code < total; ++code) {
    Int c = code;
    for (int g : free_pos) {
      z[g] = reduce(base[g] + ses.inj.apply(kelems[c % fib]), m);
      c /= fib;
    }
    bool ok = true;
    for (int g = 0; g < go && ok; ++g)
      for (int h = 0; h < go && ok; ++h)
        ok = mid.elem_eq(reduce(z[g] + mid.act(g, z[h]), m), z[mid.group().mul(g, h)]);
    if (ok) return true;
  }
  return false;
}

// --- Borel nonabelian H^1 ----------------------------------------------------

BorelGroup::BorelGroup(WittRing w, AlgebraAction action)
    : w_(std::move(w)), action_(std::move(action)) {
  action_.validate(w_.coeff());
  const Int count = w_.element_count();
  if (count > (1 << 14)) throw ZpError("borel ring too large");
  unit_inverse_.assign(count, -1);
  for (Int code = 0; code < count; ++code) {
    auto x = w_.decode(code);
    auto a0inv = w_.coeff().inverse(x.row(0));
    if (!a0inv) continue;
    auto y = w_.teichmuller(*a0inv);
    auto two = w_.add(w_.one(), w_.one());
    for (int it = 0; it < w_.length() + 2; ++it) y = w_.mul(y, w_.sub(two, w_.mul(x, y)));
    if (w_.mul(x, y) != w_.one()) throw ZpError("borel: unit inversion failed");
    unit_inverse_[code] = w_.encode(y);
  }
}

std::vector<BorelElem> BorelGroup::elements() const {
  const Int count = w_.element_count();
  Int units = 0;
  for (Int a = 0; a < count; ++a)
    if (unit_inverse_[a] >= 0) ++units;
  if (units * units > (1 << 22) / count)
    throw ZpError("borel group too large to enumerate");
  std::vector<BorelElem> out;
  out.reserve(units * units * count);
  for (Int a = 0; a < count; ++a) {
    if (unit_inverse_[a] < 0) continue;
    for (Int d = 0; d < count; ++d) {
      if (unit_inverse_[d] < 0) continue;
      for (Int b = 0; b < count; ++b) out.push_back(BorelElem{a, b, d});
    }
  }
  return out;
}

BorelElem BorelGroup::identity_elem() const {
  return BorelElem{w_.encode(w_.one()), w_.encode(w_.zero()), w_.encode(w_.one())};
}

BorelElem BorelGroup::mul(const BorelElem& x, const BorelElem& y) const {
  auto xa = w_.decode(x.a), xb = w_.decode(x.b), xd = w_.decode(x.d);
  auto ya = w_.decode(y.a), yb = w_.decode(y.b), yd = w_.decode(y.d);
  return BorelElem{w_.encode(w_.mul(xa, ya)),
                   w_.encode(w_.add(w_.mul(xa, yb), w_.mul(xb, yd))),
                   w_.encode(w_.mul(xd, yd))};
}

BorelElem BorelGroup::inv(const BorelElem& x) const {
  auto ai = w_.decode(unit_inverse_[x.a]);
  auto di = w_.decode(unit_inverse_[x.d]);
  auto b = w_.decode(x.b);
  return BorelElem{w_.encode(ai), w_.encode(w_.neg(w_.mul(w_.mul(ai, b), di))),
                   w_.encode(di)};
}

BorelElem BorelGroup::act(int g, const BorelElem& x) const {
  const MatZ& mat = action_.mats[g];
  return BorelElem{w_.encode(w_.map_coeffs(mat, w_.decode(x.a))),
                   w_.encode(w_.map_coeffs(mat, w_.decode(x.b))),
                   w_.encode(w_.map_coeffs(mat, w_.decode(x.d)))};
}

BorelElem BorelGroup::reduce_mod_p(const BorelGroup& level1, const BorelElem& x) const {
  auto tr = [&](Int code) { return level1.ring().encode(w_.truncate(w_.decode(code), 1)); };
  return BorelElem{tr(x.a), tr(x.b), tr(x.d)};
}

bool BorelGroup::cocycle_law(const std::vector<BorelElem>& z) const {
  const FiniteGroup& g = action_.group;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (!(z[g.mul(a, b)] == mul(z[a], act(a, z[b])))) return false;
  return true;
}

bool BorelGroup::twisted_conjugate(const std::vector<BorelElem>& z1,
                                   const std::vector<BorelElem>& z2) const {
  const FiniteGroup& g = action_.group;
  for (auto& t : elements()) {
    BorelElem ti = inv(t);
    bool ok = true;
    for (int a = 0; a < g.order() && ok; ++a)
      ok = z2[a] == mul(mul(ti, z1[a]), act(a, t));
    if (ok) return true;
  }
  return false;
}

std::vector<std::vector<BorelElem>> BorelGroup::h1_classes(Int bound) const {
  const FiniteGroup& g = action_.group;
  const int n = g.order();
  // enumeration caps: arbitrary groups up to order 4, cyclic ones up to 8
  bool cyclic = true;
  {
    std::set<int> cl;
    for (int seed = 0; seed < n && cyclic; ++seed) {
      cl.clear();
      int x = g.identity();
      do {
        cl.insert(x);
        x = g.mul(x, seed);
      } while (x != g.identity());
      if (static_cast<int>(cl.size()) == n) break;
      if (seed + 1 == n) cyclic = false;
    }
  }
  if (n > (cyclic ? 8 : 4)) throw ZpError("borel H^1 enumeration cap exceeded");
  std::vector<int> gens;
  {
    std::vector<int> cand;
    for (int i = 0; i < n; ++i)
      if (i != g.identity()) cand.push_back(i);
    for (int size = 0; size <= static_cast<int>(cand.size()) && gens.empty(); ++size) {
      std::vector<int> pick(size, 0);
      std::function<void(int, int)> rec = [&](int at, int from) {
        if (!gens.empty()) return;
        if (at == size) {
          std::set<int> cl = {g.identity()};
          bool grew = true;
          while (grew) {
            grew = false;
            std::vector<int> cur(cl.begin(), cl.end());
            for (int a : cur)
              for (int s = 0; s < size; ++s)
                if (cl.insert(g.mul(a, pick[s])).second) grew = true;
          }
          if (static_cast<int>(cl.size()) == n) gens = pick;
          return;
        }
        for (int i = from; i < static_cast<int>(cand.size()); ++i) {
          pick[at] = cand[i];
          rec(at + 1, i + 1);
        }
      };
      rec(0, 0);
      if (size == 0 && n == 1) break;
    }
  }

  auto els = elements();
  Int total = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    total *= static_cast<Int>(els.size());
    if (total > bound) throw ZpError("borel cocycle enumeration over bound");
  }

  std::vector<std::vector<BorelElem>> reps;
  std::vector<Int> pick(gens.size(), 0);
  for (Int code = 0; code < total; ++code) {
    Int c = code;
    for (size_t i = 0; i < gens.size(); ++i) {
      pick[i] = c % els.size();
      c /= els.size();
    }
    std::vector<std::optional<BorelElem>> z(n);
    z[g.identity()] = identity_elem();
    bool ok = true;
    for (size_t i = 0; i < gens.size() && ok; ++i) {
      if (z[gens[i]] && !(*z[gens[i]] == els[pick[i]])) ok = false;
      z[gens[i]] = els[pick[i]];
    }
    bool grew = true;
    while (ok && grew) {
      grew = false;
      for (int a = 0; a < n && ok; ++a) {
        if (!z[a]) continue;
        for (int b = 0; b < n && ok; ++b) {
          if (!z[b]) continue;
          BorelElem v = mul(*z[a], act(a, *z[b]));
          int ab = g.mul(a, b);
          if (!z[ab]) {
            z[ab] = v;
            grew = true;
          } else if (!(*z[ab] == v)) {
            ok = false;
          }
        }
      }
    }
    for (int a = 0; a < n && ok; ++a) ok = z[a].has_value();
    if (ok) {
      std::vector<BorelElem> table(n);
      for (int a = 0; a < n; ++a) table[a] = *z[a];
      if (cocycle_law(table)) {
        bool fresh = true;
        for (auto& rep : reps)
          if (twisted_conjugate(rep, table)) {
            fresh = false;
            break;
          }
        if (fresh) reps.push_back(table);
      }
    }
  }
  return reps;
}

B2Surjectivity b2_reduction_surjective(const FiniteAlgebra& a, const AlgebraAction& action,
                                       Int bound) {
  BorelGroup level2(WittRing(a, 2), action);
  BorelGroup level1(WittRing(a, 1), action);
  auto classes2 = level2.h1_classes(bound);
  auto classes1 = level1.h1_classes(bound);

  B2Surjectivity out;
  out.level1_reps = classes1;
  out.lifts.assign(classes1.size(), std::nullopt);
  for (auto& z2 : classes2) {
    std::vector<BorelElem> red(z2.size());
    for (size_t i = 0; i < z2.size(); ++i) red[i] = level2.reduce_mod_p(level1, z2[i]);
    for (size_t c = 0; c < classes1.size(); ++c)
      if (!out.lifts[c] && level1.twisted_conjugate(classes1[c], red))
        out.lifts[c] = z2;
  }
  out.surjective = true;
  for (auto& l : out.lifts)
    if (!l) out.surjective = false;
  return out;
}

}  // namespace wittlift
