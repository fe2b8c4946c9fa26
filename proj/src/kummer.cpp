#include "wittlift/kummer.hpp"

#include <algorithm>
#include <set>

namespace wittlift {

Mod CyclotomicData::top_mod() const {
  Int n = 1;
  for (int i = 0; i <= e; ++i) n *= p;
  return Mod::make(n);
}

void CyclotomicData::validate() const {
  if (e < 1) throw ZpError("cyclotomic data: depth must be finite and >= 1");
  if (degree < 1) throw ZpError("cyclotomic data: degree must be >= 1");
  chi.validate();
  if (!(chi.group == group)) throw ZpError("cyclotomic data: group mismatch");
  if (!(chi.mod == top_mod()))
    throw ZpError("cyclotomic data: character modulus must be p^{e+1}");
}

CyclotomicReport is_cyclotomic_pair(const CyclotomicData& data) {
  data.validate();
  if (data.degree > 2) throw ZpError("cyclotomic check capped at degree 2");
  CyclotomicReport report;
  report.is_cyclotomic = true;
  Mod top = data.top_mod();
  for (auto& els : data.group.subgroups()) {
    Subgroup h = subgroup_of(data.group, els);
    Character chih = data.chi.restricted(h);
    GModule tmod = GModule::character_module(chih, data.degree, data.e + 1, top);
    GModule bmod = GModule::character_module(chih, data.degree, 1, top);
    GModMap red{tmod, bmod, identity(1)};
    red.validate();
    SubgroupReport sr;
    sr.elements = els;
    sr.top_order = cohomology(tmod, data.degree)->order();
    auto hb = cohomology(bmod, data.degree);
    sr.bottom_order = hb->order();
    sr.surjective = true;
    for (auto& cls : hb->all_classes()) {
      if (!lift_class_through(red, data.degree, cls)) {
        sr.surjective = false;
        sr.witness = cls;
        break;
      }
    }
    if (!sr.surjective) report.is_cyclotomic = false;
    report.subgroups.push_back(std::move(sr));
  }
  return report;
}

std::optional<Character> is_cyclothymic_witness(const FiniteGroup& g, int degree, int e,
                                                const Character& theta_mod_p,
                                                const std::vector<CyclothymicInput>& inputs) {
  theta_mod_p.validate();
  if (!(theta_mod_p.group == g)) throw ZpError("cyclothymic: group mismatch");
  if (theta_mod_p.mod.r != 1) throw ZpError("cyclothymic: theta must be a mod-p character");
  Int topn = theta_mod_p.mod.p;
  for (int i = 0; i < e; ++i) topn *= theta_mod_p.mod.p;
  Mod top = Mod::make(topn);

  for (auto& cand : Character::lifting(theta_mod_p, top)) {
    bool all_lift = true;
    for (auto& input : inputs) {
      Subgroup h = subgroup_of(g, input.subgroup_elements);
      Character candh = cand.restricted(h);
      GModule tmod = GModule::character_module(candh, 1, e + 1, top);
      GModule bmod = GModule::character_module(candh, 1, 1, top);
      GModMap red{tmod, bmod, identity(1)};
      auto hb = cohomology(bmod, degree);
      if (!hb->is_cocycle(input.class_over_subgroup))
        throw ZpError("cyclothymic: input is not a cocycle");
      if (!lift_class_through(red, degree, input.class_over_subgroup)) {
        all_lift = false;
        break;
      }
    }
    if (all_lift) return cand;
  }
  return std::nullopt;
}

FitFactorization fit_factorization(const FiniteAlgebra& a, const AlgebraAction& action) {
  action.validate(a);
  Mod mp = a.base_mod();
  auto rd = residue_decomposition(a, action);
  auto [nilk, m] = a.nilpotency_data();
  (void)nilk;
  const int dred = rd.reduced.dim();
  const int ng = action.group.order();

  std::vector<MatZ> red_act(ng);
  for (int g = 0; g < ng; ++g) {
    MatZ ra(dred, dred);
    for (int i = 0; i < dred; ++i)
      ra.row(i) = reduce(rd.from_reduced.row(i) * action.mats[g], mp) * rd.to_reduced;
    red_act[g] = reduce(std::move(ra), mp);
  }

  FitFactorization fit;
  fit.m = m;

  const int nf = static_cast<int>(rd.factors.size());
  std::vector<int> orbit_id(nf, -1);

  struct OrbitInfo {
    int rep_factor = 0;
    std::vector<int> stab;
    std::vector<int> coset_reps;
    std::vector<MatZ> gamma;
    int fdim = 0;
    int base_index = 0;
  };
  std::vector<OrbitInfo> orbits;
  std::vector<RowZ> xvecs;  // reduced-algebra coordinates

  auto factor_matrix = [&](int factor, int g) {
    const FiniteAlgebra& field = rd.factors[factor];
    MatZ fa(field.dim(), field.dim());
    for (int t = 0; t < field.dim(); ++t) {
      RowZ in_red = reduce(rd.factor_basis[factor].row(t) * red_act[g], mp);
      fa.row(t) = reduce(in_red * rd.to_factor[factor], mp);
    }
    return fa;
  };

  for (int i0 = 0; i0 < nf; ++i0) {
    if (orbit_id[i0] >= 0) continue;
    OrbitInfo info;
    info.rep_factor = i0;
    for (int g = 0; g < ng; ++g)
      if (rd.factor_perm[g][i0] == i0) info.stab.push_back(g);
    info.coset_reps = left_coset_reps(action.group, info.stab);
    for (int g = 0; g < ng; ++g)
      orbit_id[rd.factor_perm[g][i0]] = static_cast<int>(orbits.size());

    const FiniteAlgebra& field = rd.factors[i0];
    Subgroup st = subgroup_of(action.group, info.stab);
    std::vector<MatZ> fact_act;
    for (int si = 0; si < st.group.order(); ++si)
      fact_act.push_back(factor_matrix(i0, st.embed[si]));
    for (auto& famat : fact_act) {
      bool seen = false;
      for (auto& gm : info.gamma) seen = seen || gm == famat;
      if (!seen) info.gamma.push_back(famat);
    }
    AlgebraAction st_on_field{st.group, fact_act};
    st_on_field.validate(field);
    SubAlgebra fixed = fixed_subring(field, st_on_field);
    info.fdim = fixed.algebra.dim();

    RowZ theta;
    bool found = false;
    for (Int code = 0; code < field.element_count() && !found; ++code) {
      RowZ cand = field.decode(code);
      MatZ span(static_cast<int>(info.gamma.size()) * info.fdim, field.dim());
      int rr = 0;
      for (auto& gm : info.gamma) {
        RowZ gth = reduce(cand * gm, mp);
        for (int j = 0; j < info.fdim; ++j)
          span.row(rr++) = field.mul(gth, fixed.inclusion.row(j));
      }
      if (static_cast<Eigen::Index>(info.gamma.size()) * info.fdim == field.dim() &&
          span_order(span, mp) == field.element_count()) {
        theta = cand;
        found = true;
      }
    }
    if (!found) throw ZpError("fit: no normal basis element found");

    info.base_index = static_cast<int>(xvecs.size());
    const int ngam = static_cast<int>(info.gamma.size());
    for (size_t c = 0; c < info.coset_reps.size(); ++c)
      for (int gi = 0; gi < ngam; ++gi)
        for (int j = 0; j < info.fdim; ++j) {
          RowZ in_field =
              field.mul(reduce(theta * info.gamma[gi], mp), fixed.inclusion.row(j));
          RowZ in_red = reduce(in_field * rd.factor_basis[i0], mp);
          xvecs.push_back(reduce(in_red * red_act[info.coset_reps[c]], mp));
        }
    orbits.push_back(std::move(info));
  }

  fit.x_size = static_cast<int>(xvecs.size());
  MatZ bx(fit.x_size, dred);
  for (int i = 0; i < fit.x_size; ++i) bx.row(i) = xvecs[i];
  if (span_order(bx, mp) != rd.reduced.element_count())
    throw ZpError("fit: permutation vectors do not span the reduced algebra");

  fit.x_perm.assign(ng, std::vector<int>(fit.x_size, -1));
  for (auto& info : orbits) {
    const int ngam = static_cast<int>(info.gamma.size());
    Subgroup st = subgroup_of(action.group, info.stab);
    for (int g = 0; g < ng; ++g) {
      for (size_t c = 0; c < info.coset_reps.size(); ++c) {
        int y = action.group.mul(g, info.coset_reps[c]);
        int cprime = -1, s = -1;
        for (size_t c2 = 0; c2 < info.coset_reps.size() && cprime < 0; ++c2) {
          int cand = action.group.mul(action.group.inv(info.coset_reps[c2]), y);
          if (st.index_in_sub[cand] >= 0) {
            cprime = static_cast<int>(c2);
            s = cand;
          }
        }
        if (cprime < 0) throw ZpError("fit: coset decomposition failed");
        MatZ ms = factor_matrix(info.rep_factor, s);
        for (int gi = 0; gi < ngam; ++gi) {
          MatZ composed = mul_mod(info.gamma[gi], ms, mp);
          int gip = -1;
          for (int t = 0; t < ngam; ++t)
            if (info.gamma[t] == composed) gip = t;
          if (gip < 0) throw ZpError("fit: automorphism composition left the image");
          for (int j = 0; j < info.fdim; ++j) {
            int from = info.base_index + (static_cast<int>(c) * ngam + gi) * info.fdim + j;
            int to = info.base_index + (cprime * ngam + gip) * info.fdim + j;
            fit.x_perm[g][from] = to;
          }
        }
      }
    }
  }
  for (int g = 0; g < ng; ++g)
    for (int i = 0; i < fit.x_size; ++i)
      if (fit.x_perm[g][i] < 0) throw ZpError("fit: incomplete permutation");
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h)
      for (int i = 0; i < fit.x_size; ++i)
        if (fit.x_perm[action.group.mul(g, h)][i] != fit.x_perm[g][fit.x_perm[h][i]])
          throw ZpError("fit: X permutation is not an action");

  fit.f = MatZ(a.dim(), fit.x_size);
  for (int i = 0; i < a.dim(); ++i) {
    RowZ red = reduce(a.basis(i) * rd.to_reduced, mp);
    auto sol = solve_row(bx, red, mp);
    if (!sol) throw ZpError("fit: failed to expand in the permutation basis");
    fit.f.row(i) = *sol;
  }
  Int pm = 1;
  for (int i = 0; i < fit.m; ++i) pm *= a.p();
  fit.g = MatZ(fit.x_size, a.dim());
  for (int i = 0; i < fit.x_size; ++i) {
    RowZ lift = reduce(xvecs[i] * rd.from_reduced, mp);
    fit.g.row(i) = a.pow(lift, pm);
  }

  MatZ frobm = identity(a.dim());
  for (int i = 0; i < fit.m; ++i) frobm = mul_mod(frobm, a.frobenius_matrix(), mp);
  if (mul_mod(fit.f, fit.g, mp) != frobm) throw ZpError("fit: g o f differs from Frob^m");
  for (int g = 0; g < ng; ++g) {
    MatZ pg = MatZ::Zero(fit.x_size, fit.x_size);
    for (int i = 0; i < fit.x_size; ++i) pg(i, fit.x_perm[g][i]) = 1;
    if (mul_mod(action.mats[g], fit.f, mp) != mul_mod(fit.f, pg, mp))
      throw ZpError("fit: f is not equivariant");
    if (mul_mod(pg, fit.g, mp) != mul_mod(fit.g, action.mats[g], mp))
      throw ZpError("fit: g is not equivariant");
  }

  std::vector<char> seen(fit.x_size, 0);
  for (int i = 0; i < fit.x_size; ++i) {
    if (seen[i]) continue;
    std::set<int> os;
    for (int g = 0; g < ng; ++g) os.insert(fit.x_perm[g][i]);
    std::vector<int> orb(os.begin(), os.end());
    for (int x : orb) seen[x] = 1;
    fit.orbit_rep.push_back(i);
    std::vector<int> stab;
    for (int g = 0; g < ng; ++g)
      if (fit.x_perm[g][i] == i) stab.push_back(g);
    fit.stabilizers.push_back(stab);
    fit.orbit_of.push_back(orb);
  }
  return fit;
}

LiftContext::LiftContext(const CyclotomicData& data, FiniteAlgebra a, AlgebraAction action)
    : data_(data), alg_(std::move(a)), action_(std::move(action)) {
  data_.validate();
  Mod top = data_.top_mod();
  for (int s = 1; s <= data_.e + 1; ++s)
    levels_.push_back(witt_module_cached(alg_, s, action_, data_.chi, 1, top));
}

const WittModule& LiftContext::level(int s) const {
  if (s < 1 || s > data_.e + 1) throw ZpError("lift context: level out of range");
  return *levels_[s - 1];
}

GModMap LiftContext::truncation(int from_s, int to_s) const {
  return truncation_map(level(from_s), level(to_s));
}

GModMap LiftContext::verschiebung(int from_s, int to_s) const {
  return verschiebung_map(level(from_s), level(to_s));
}

RowZ LiftContext::frob_pullback(int s, const RowZ& cocycle, int times) const {
  RowZ out = cocycle;
  GModMap f = level(s).frobenius_map();
  for (int i = 0; i < times; ++i) out = map_cochain(f, 1, out);
  return out;
}

namespace {

RowZ lift_rank1_base(const LiftContext& ctx, const RowZ& c, int& m_used) {
  const CyclotomicData& data = ctx.data();
  const FiniteAlgebra& a = ctx.algebra();
  const WittModule& w1 = ctx.level(1);
  const WittModule& wtop = ctx.level(data.e + 1);
  const FiniteGroup& g = data.group;
  const Mod top = data.top_mod();
  const int go = g.order();

  // subalgebra generated by the G-orbit of the cocycle values
  std::vector<RowZ> seeds;
  for (int gg = 0; gg < go; ++gg) {
    RowZ val = c.segment(static_cast<Int>(gg) * w1.gens(), w1.gens());
    for (int g2 = 0; g2 < go; ++g2)
      seeds.push_back(reduce(val * w1.group_action().mats[g2], a.base_mod()));
  }
  MatZ seedm(seeds.size(), a.dim());
  for (size_t i = 0; i < seeds.size(); ++i) seedm.row(i) = seeds[i];
  SubAlgebra sub = subalgebra_generated(a, seedm);
  const FiniteAlgebra& ap = sub.algebra;
  AlgebraAction ap_action;
  ap_action.group = g;
  for (int gg = 0; gg < go; ++gg) {
    MatZ mg(ap.dim(), ap.dim());
    for (int t = 0; t < ap.dim(); ++t)
      mg.row(t) = sub.project(
          a, reduce(sub.inclusion.row(t) * w1.group_action().mats[gg], a.base_mod()));
    ap_action.mats.push_back(mg);
  }
  ap_action.validate(ap);

  FitFactorization fit = fit_factorization(ap, ap_action);
  m_used = fit.m;

  // the cocycle in A'(1)-coordinates, then pushed along f
  RowZ cx = RowZ::Zero(static_cast<Int>(go) * fit.x_size);
  for (int gg = 0; gg < go; ++gg) {
    RowZ valp =
        sub.project(a, c.segment(static_cast<Int>(gg) * w1.gens(), w1.gens()));
    cx.segment(static_cast<Int>(gg) * fit.x_size, fit.x_size) =
        reduce(valp * fit.f, a.base_mod());
  }

  auto wtopp_ptr = witt_module_cached(ap, data.e + 1, ap_action, data.chi, 1, top);
  const WittModule& wtopp = *wtopp_ptr;
  auto htopp = cohomology(wtopp.gmodule(), 1);
  RowZ total = RowZ::Zero(static_cast<Int>(go) * wtopp.gens());
  for (size_t o = 0; o < fit.orbit_rep.size(); ++o) {
    const auto& orb = fit.orbit_of[o];
    const int osz = static_cast<int>(orb.size());
    std::vector<int> pos(fit.x_size, -1);
    for (int i = 0; i < osz; ++i) pos[orb[i]] = i;

    std::vector<MatZ> bact, tact;
    for (int gg = 0; gg < go; ++gg) {
      MatZ pb = MatZ::Zero(osz, osz), pt = MatZ::Zero(osz, osz);
      Int chb = mod_pos(data.chi.values[gg], data.p);
      Int cht = mod_pos(data.chi.values[gg], top.n);
      for (int i = 0; i < osz; ++i) {
        int to = pos[fit.x_perm[gg][orb[i]]];
        pb(i, to) = chb;
        pt(i, to) = cht;
      }
      bact.push_back(pb);
      tact.push_back(pt);
    }
    GModule tmod = GModule::free_module(g, top, tact);
    MatZ brel = (data.p * identity(osz).array()).matrix();
    GModule bmod(g, top, brel, bact);

    RowZ co = RowZ::Zero(static_cast<Int>(go) * osz);
    for (int gg = 0; gg < go; ++gg)
      for (int i = 0; i < osz; ++i)
        co(static_cast<Int>(gg) * osz + i) = cx(static_cast<Int>(gg) * fit.x_size + orb[i]);

    GModMap red{tmod, bmod, identity(osz)};
    red.validate();
    auto lifted = lift_class_through(red, 1, co);
    if (!lifted)
      throw ZpError("lift: cyclotomic hypothesis failed to lift an orbit class");

    GModMap tau;
    tau.from = tmod;
    tau.to = wtopp.gmodule();
    tau.mat = MatZ(osz, wtopp.gens());
    for (int i = 0; i < osz; ++i)
      tau.mat.row(i) = wtopp.coords(wtopp.ring().teichmuller(fit.g.row(orb[i])));
    tau.validate();
    total = htopp->add_classes(total, map_cochain(tau, 1, *lifted));
  }

  GModMap incl = algebra_push_map(wtopp, wtop, sub.inclusion);
  RowZ out = map_cochain(incl, 1, total);

  auto h1 = cohomology(w1.gmodule(), 1);
  RowZ down = map_cochain(ctx.truncation(data.e + 1, 1), 1, out);
  RowZ expect = ctx.frob_pullback(1, c, m_used);
  if (h1->canon(down) != h1->canon(expect))
    throw ZpError("lift: base case failed its reduction identity");
  return out;
}

RowZ lift_rank1_rec(const LiftContext& ctx, int r, const RowZ& c, int& m_total,
                    std::vector<RowZ>& chain) {
  const CyclotomicData& data = ctx.data();
  if (r == 1) {
    int m = 0;
    RowZ out = lift_rank1_base(ctx, c, m);
    m_total = m;
    chain.push_back(out);
    return out;
  }
  const int top_s = data.e + 1;
  auto hr = cohomology(ctx.level(r).gmodule(), 1);

  RowZ b = map_cochain(ctx.truncation(r, r - 1), 1, c);
  int s_exp = 0;
  RowZ lb = lift_rank1_rec(ctx, r - 1, b, s_exp, chain);

  RowZ b_r = map_cochain(ctx.truncation(top_s, r), 1, lb);
  RowZ delta = hr->sub_classes(ctx.frob_pullback(r, c, s_exp), b_r);

  auto bprime = lift_class_through(ctx.verschiebung(1, r), 1, delta);
  if (!bprime) throw ZpError("lift: defect failed to come from the kernel");

  int m2 = 0;
  RowZ beta = lift_rank1_base(ctx, *bprime, m2);
  RowZ beta_bar = map_cochain(ctx.truncation(top_s, top_s - (r - 1)), 1, beta);

  auto htop = cohomology(ctx.level(top_s).gmodule(), 1);
  RowZ out =
      htop->add_classes(ctx.frob_pullback(top_s, lb, m2),
                        map_cochain(ctx.verschiebung(top_s - (r - 1), top_s), 1, beta_bar));
  m_total = s_exp + m2;

  RowZ down = map_cochain(ctx.truncation(top_s, r), 1, out);
  if (hr->canon(down) != hr->canon(ctx.frob_pullback(r, c, m_total)))
    throw ZpError("lift: induction step failed its reduction identity");
  chain.push_back(out);
  return out;
}

}  // namespace

LiftReport lift_cocycle_rank1(const CyclotomicData& data, const FiniteAlgebra& a,
                              const AlgebraAction& action, int r, const RowZ& c) {
  auto check = is_cyclotomic_pair(data);
  if (!check.is_cyclotomic) throw ZpError("lift: the pair fails the cyclotomic hypothesis");
  if (r < 1 || r > data.e) throw ZpError("lift: need 1 <= r <= e");

  LiftContext ctx(data, a, action);
  auto hr = cohomology(ctx.level(r).gmodule(), 1);
  if (!hr->is_cocycle(c)) throw ZpError("lift: input is not a cocycle");

  LiftReport report;
  report.m_of_a = fit_factorization(a, action).m;

  report.ladder_lift = lift_rank1_rec(ctx, r, c, report.m_ladder, report.chain);

  GModMap down = ctx.truncation(data.e + 1, r);
  for (int m = 0; m <= report.m_ladder; ++m) {
    auto direct = lift_class_through(down, 1, ctx.frob_pullback(r, c, m));
    if (direct) {
      report.m = m;
      report.lift = *direct;
      break;
    }
  }
  return report;
}

InvertibleLiftReport lift_cocycle_invertible(const CyclotomicData& data,
                                             const FiniteAlgebra& a,
                                             const AlgebraAction& action, int r,
                                             const RowZ& c,
                                             const InvertibleModuleDescriptor& line) {
  if (!line.free_rank_one)
    throw ZpError("invertible lift: only free rank-one modules are supported here");
  InvertibleLiftReport out;
  out.base = lift_cocycle_rank1(data, a, action, r, c);
  Int pm = 1;
  for (int i = 0; i < out.base.m; ++i) pm *= data.p;
  out.line_bundle_tag = line.label + "^(" + std::to_string(pm) + ")";
  return out;
}

LaurentModel laurent_model(const CyclotomicData& data, int k) {
  data.validate();
  if (k < 1 || k > data.e + 1) throw ZpError("laurent: level out of range");
  Int pk = 1;
  for (int i = 0; i < k; ++i) pk *= data.p;
  const int go = data.group.order();
  Int big_order = pk * go;
  if (big_order > 512) throw ZpError("laurent: table size bound exceeded");

  auto idx = [&](Int x, int g) { return static_cast<int>(x * go + g); };
  std::vector<std::vector<int>> table(big_order, std::vector<int>(big_order));
  for (Int x = 0; x < pk; ++x)
    for (int g = 0; g < go; ++g)
      for (Int y = 0; y < pk; ++y)
        for (int h = 0; h < go; ++h) {
          Int xz = mod_pos(x + mod_pos(data.chi.values[g], pk) * y, pk);
          table[idx(x, g)][idx(y, h)] = idx(xz, data.group.mul(g, h));
        }
  LaurentModel lm;
  lm.level = k;
  lm.big = FiniteGroup::from_table(std::move(table));
  lm.proj.resize(big_order);
  lm.kernel_x.resize(big_order);
  for (Int x = 0; x < pk; ++x)
    for (int g = 0; g < go; ++g) {
      lm.proj[idx(x, g)] = g;
      lm.kernel_x[idx(x, g)] = x;
    }
  lm.embed_kernel.resize(pk);
  for (Int x = 0; x < pk; ++x) lm.embed_kernel[x] = idx(x, data.group.identity());

  Character chi_big;
  chi_big.group = lm.big;
  chi_big.mod = Mod::make(pk);
  chi_big.values.resize(big_order);
  for (int i = 0; i < big_order; ++i)
    chi_big.values[i] = mod_pos(data.chi.values[lm.proj[i]], pk);
  chi_big.validate();
  lm.coefficients = GModule::character_module(chi_big, 1, k, Mod::make(pk));

  lm.t_cocycle = RowZ::Zero(big_order);
  for (int i = 0; i < big_order; ++i) lm.t_cocycle(i) = lm.kernel_x[i];
  if (!cohomology(lm.coefficients, 1)->is_cocycle(lm.t_cocycle))
    throw ZpError("laurent: (t) is not a cocycle");
  return lm;
}

RowZ cup_with_t(const LaurentModel& lm, const CyclotomicData& data, int i_power, int degree,
                const RowZ& cls) {
  Int pk = 1;
  for (int i = 0; i < lm.level; ++i) pk *= data.p;
  Mod mod = Mod::make(pk);
  Character chi_big;
  chi_big.group = lm.big;
  chi_big.mod = mod;
  chi_big.values.resize(lm.big.order());
  for (int i = 0; i < lm.big.order(); ++i)
    chi_big.values[i] = mod_pos(data.chi.values[lm.proj[i]], pk);
  GModule mi = GModule::character_module(chi_big, i_power, lm.level, mod);
  GModule mi1 = GModule::character_module(chi_big, i_power + 1, lm.level, mod);
  Pairing pair{mi, lm.coefficients, mi1, MatZ::Ones(1, 1)};
  pair.validate();
  return cup_cochain(pair, degree, cls, 1, lm.t_cocycle);
}

SmoothCheckReport smooth_instance_check(const FiniteAlgebra& a, const AlgebraAction& action,
                                        Int bound) {
  SmoothCheckReport out;
  out.detail = b2_reduction_surjective(a, action, bound);
  out.surjective = out.detail.surjective;
  return out;
}

KummerIdentityReport kummer_identity_check(const FiniteGroup& g, const RowZ& e1,
                                           const Character& chi_mod4,
                                           const GModExtension& lifted) {
  if (chi_mod4.mod.n != 4) throw ZpError("kummer identity: character must be mod 4");
  chi_mod4.validate();
  Mod m4 = Mod::make(4);
  KummerIdentityReport rep;

  GModule f2 = GModule::trivial(g, m4).quotient_by_p_power(1);
  CohomologyGroup h1(f2, 1);
  CohomologyGroup h2(f2, 2);
  if (!h1.is_cocycle(e1)) throw ZpError("kummer identity: e1 is not a cocycle");

  GModule b2 = lifted.b.quotient_by_p_power(1);
  GModule e2 = lifted.e.quotient_by_p_power(1);
  GModule a2 = lifted.a.quotient_by_p_power(1);
  GModExtension red{b2, e2, a2, GModMap{b2, e2, lifted.inj.mat},
                    GModMap{e2, a2, lifted.surj.mat}};
  red.validate();
  HomModule hom = hom_module(a2, b2);
  auto cls = extension_class(red, hom);
  if (!cls.geometrically_trivial)
    throw ZpError("kummer identity: reduced extension has no module section");
  GModMap ident{hom.hom, f2, MatZ::Ones(hom.hom.gens(), 1)};
  ident.validate();
  RowZ red_class = h1.canon(map_cochain(ident, 1, cls.cocycle));
  rep.reduction_matches = red_class == h1.canon(e1);

  Pairing mulp{f2, f2, f2, MatZ::Ones(1, 1)};
  mulp.validate();
  RowZ chi_class = RowZ::Zero(g.order());
  for (int x = 0; x < g.order(); ++x) chi_class(x) = chi_mod4.values[x] == 3 ? 1 : 0;
  if (!h1.is_cocycle(chi_class)) throw ZpError("kummer identity: chi class broken");

  rep.lhs = h2.canon(cup_cochain(mulp, 1, e1, 1, e1));
  rep.rhs = h2.canon(cup_cochain(mulp, 1, chi_class, 1, e1));
  rep.identity_holds = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace wittlift
