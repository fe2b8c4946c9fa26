#include "wittlift/cohomology.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wittlift {

Int tuple_count(int group_order, int n) {
  Int c = 1;
  for (int i = 0; i < n; ++i) c *= group_order;
  return c;
}

Int tuple_to_index(const std::vector<int>& t, int group_order) {
  Int idx = 0;
  for (int g : t) idx = idx * group_order + g;
  return idx;
}

std::vector<int> index_to_tuple(Int idx, int group_order, int n) {
  std::vector<int> t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % group_order);
    idx /= group_order;
  }
  return t;
}

RowZ cochain_value(const GModule& m, const RowZ& z, const std::vector<int>& tuple) {
  Int blk = tuple_to_index(tuple, m.group().order());
  return z.segment(blk * m.gens(), m.gens());
}

void set_cochain_value(const GModule& m, RowZ& z, const std::vector<int>& tuple,
                       const RowZ& value) {
  Int blk = tuple_to_index(tuple, m.group().order());
  z.segment(blk * m.gens(), m.gens()) = value;
}

MatZ bar_differential(const GModule& m, int n) {
  const int go = m.group().order();
  const int k = m.gens();
  const Int din = tuple_count(go, n) * k;
  const Int dout = tuple_count(go, n + 1) * k;
  MatZ d = MatZ::Zero(din, dout);
  const Mod& mod = m.mod();
  for (Int sidx = 0; sidx < tuple_count(go, n + 1); ++sidx) {
    std::vector<int> sigma = index_to_tuple(sidx, go, n + 1);
    // g_1 . z(g_2..g_{n+1})
    {
      std::vector<int> tail(sigma.begin() + 1, sigma.end());
      Int tidx = tuple_to_index(tail, go);
      d.block(tidx * k, sidx * k, k, k) += m.action(sigma[0]);
    }
    // alternating merged terms
    Int sign = -1;
    for (int i = 0; i + 1 < n + 1; ++i) {
      std::vector<int> merged;
      for (int j = 0; j < n + 1; ++j) {
        if (j == i) {
          merged.push_back(m.group().mul(sigma[i], sigma[i + 1]));
          ++j;  // skip the absorbed entry
        } else {
          merged.push_back(sigma[j]);
        }
      }
      Int tidx = tuple_to_index(merged, go);
      d.block(tidx * k, sidx * k, k, k) += sign * identity(k);
      sign = -sign;
    }
    // (-1)^{n+1} z(g_1..g_n)
    {
      std::vector<int> head(sigma.begin(), sigma.end() - 1);
      Int tidx = tuple_to_index(head, go);
      Int last_sign = (n + 1) % 2 == 0 ? 1 : -1;
      d.block(tidx * k, sidx * k, k, k) += last_sign * identity(k);
    }
  }
  return reduce(std::move(d), mod);
}

MatZ relation_blocks(const GModule& m, int n) {
  const int go = m.group().order();
  const int k = m.gens();
  const Int nt = tuple_count(go, n);
  const Int nrel = m.relations().rows();
  MatZ rb = MatZ::Zero(nt * nrel, nt * k);
  for (Int t = 0; t < nt; ++t) rb.block(t * nrel, t * k, nrel, k) = m.relations();
  return rb;
}

namespace {

MatZ vstack(const MatZ& a, const MatZ& b) {
  MatZ out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

}  // namespace

CohomologyGroup::CohomologyGroup(GModule m, int degree, Int deep_guard)
    : m_(std::move(m)), n_(degree) {
  if (n_ < 0) throw ZpError("cohomology degree must be >= 0");
  if (n_ > 3) throw ZpError("cohomology degree cap is 3");
  if (n_ == 3 && cochain_dim(4) > deep_guard)
    throw ZpError("degree-3 cohomology exceeds the size guard");
  if (cochain_dim(n_ + 1) > (1 << 18))
    throw ZpError("cochain spaces exceed the size bound");
  for (int i = 0; i <= n_; ++i) diff_.push_back(bar_differential(m_, i));

  const Mod& mod = m_.mod();
  // cocycles: z with z * D_n inside the relation span levelwise
  MatZ stacked = vstack(diff_[n_], relation_blocks(m_, n_ + 1));
  MatZ ker = kernel_basis(stacked, mod);
  std::vector<RowZ> zrows;
  for (Eigen::Index i = 0; i < ker.rows(); ++i) {
    RowZ z = ker.row(i).head(cochain_dim(n_));
    if (!z.isZero()) zrows.push_back(z);
  }
  // coboundaries: image of d^{n-1} plus the relation blocks of level n
  MatZ relb = relation_blocks(m_, n_);
  Eigen::Index prev_rows = n_ == 0 ? 0 : diff_[n_ - 1].rows();
  bmat_ = MatZ(prev_rows + relb.rows(), cochain_dim(n_));
  if (n_ > 0) bmat_.topRows(prev_rows) = diff_[n_ - 1];
  bmat_.bottomRows(relb.rows()) = relb;
  bmat_ = howell_form(bmat_, mod);

  zmat_ = MatZ(zrows.size() + bmat_.rows(), cochain_dim(n_));
  for (size_t i = 0; i < zrows.size(); ++i) zmat_.row(i) = zrows[i];
  zmat_.bottomRows(bmat_.rows()) = bmat_;
  zmat_ = howell_form(zmat_, mod);

  hsq_ = std::make_shared<Subquotient>(zmat_, bmat_, mod);
}

Int CohomologyGroup::cochain_dim(int n) const {
  return tuple_count(m_.group().order(), n) * m_.gens();
}

const MatZ& CohomologyGroup::differential(int n) const {
  if (n < 0 || n > n_) throw ZpError("differential index out of range");
  return diff_[n];
}

RowZ CohomologyGroup::apply_differential(int n, const RowZ& z) const {
  return reduce(z * differential(n), m_.mod());
}

bool CohomologyGroup::is_cocycle(const RowZ& z) const {
  if (z.cols() != cochain_dim(n_)) return false;
  RowZ w = reduce(z * diff_[n_], m_.mod());
  const int go = m_.group().order();
  for (Int t = 0; t < tuple_count(go, n_ + 1); ++t)
    if (!m_.is_relation(w.segment(t * m_.gens(), m_.gens()))) return false;
  return true;
}

bool CohomologyGroup::is_coboundary(const RowZ& z) const {
  return span_contains(bmat_, z, m_.mod());
}

RowZ CohomologyGroup::canon(const RowZ& z) const {
  return coset_reduce(bmat_, z, m_.mod());
}

RowZ CohomologyGroup::zero_class() const { return RowZ::Zero(cochain_dim(n_)); }

RowZ CohomologyGroup::class_rep(int i) const { return canon(hsq_->basis_row(i)); }

RowZ CohomologyGroup::coords_of(const RowZ& z) const { return hsq_->coords(z); }

RowZ CohomologyGroup::rep_from_coords(const RowZ& c) const {
  return canon(hsq_->from_coords(c));
}

std::vector<RowZ> CohomologyGroup::all_classes(Int limit) const {
  if (order() > limit) throw ZpError("class enumeration over limit");
  std::vector<RowZ> out;
  RowZ c = RowZ::Zero(rank());
  while (true) {
    out.push_back(rep_from_coords(c));
    int s = 0;
    for (; s < rank(); ++s) {
      if (++c(s) < invariants()[s]) break;
      c(s) = 0;
    }
    if (s == rank()) break;
  }
  return out;
}

RowZ CohomologyGroup::add_classes(const RowZ& a, const RowZ& b) const {
  return canon(reduce(a + b, m_.mod()));
}

RowZ CohomologyGroup::sub_classes(const RowZ& a, const RowZ& b) const {
  return canon(reduce(a - b, m_.mod()));
}

RowZ CohomologyGroup::scalar_class(Int c, const RowZ& a) const {
  return canon(reduce(c * a, m_.mod()));
}

namespace {

std::string module_key(const GModule& m, int degree) {
  std::ostringstream os;
  os << degree << '|' << m.mod().n << '|' << m.gens() << '|' << m.group().order() << '|';
  for (int g = 0; g < m.group().order(); ++g)
    for (int h = 0; h < m.group().order(); ++h) os << m.group().mul(g, h) << ',';
  os << '|' << m.relations().rows() << '|';
  for (Eigen::Index i = 0; i < m.relations().rows(); ++i)
    for (int j = 0; j < m.gens(); ++j) os << m.relations()(i, j) << ',';
  for (int g = 0; g < m.group().order(); ++g)
    for (int i = 0; i < m.gens(); ++i)
      for (int j = 0; j < m.gens(); ++j) os << m.action(g)(i, j) << ',';
  return os.str();
}

std::map<std::string, std::shared_ptr<const CohomologyGroup>> g_cohom_cache;
std::mutex g_cohom_mutex;

}  // namespace

std::shared_ptr<const CohomologyGroup> cohomology(const GModule& m, int degree) {
  std::string key = module_key(m, degree);
  std::lock_guard<std::mutex> lock(g_cohom_mutex);
  auto it = g_cohom_cache.find(key);
  if (it != g_cohom_cache.end()) return it->second;
  auto ptr = std::make_shared<const CohomologyGroup>(m, degree);
  g_cohom_cache[key] = ptr;
  return ptr;
}

void ModuleSES::validate() const {
  inj.validate();
  surj.validate();
  const GModule& a = inj.from;
  const GModule& b = inj.to;
  const GModule& c = surj.to;
  const Mod& m = b.mod();
  if (!(surj.from.gens() == b.gens())) throw ZpError("ses: middle module mismatch");

  // surjectivity
  MatZ img = vstack(surj.mat, c.relations());
  if (span_order(img, m) != span_order(vstack(identity(c.gens()), MatZ(0, c.gens())), m))
    throw ZpError("ses: surjection is not onto");

  // ker(surj) = im(inj) inside B
  MatZ kerpi_full = kernel_basis(vstack(surj.mat, c.relations()), m);
  std::vector<RowZ> kerrows;
  for (Eigen::Index i = 0; i < kerpi_full.rows(); ++i) {
    RowZ x = kerpi_full.row(i).head(b.gens());
    if (!x.isZero()) kerrows.push_back(x);
  }
  MatZ ker(kerrows.size() + b.relations().rows(), b.gens());
  for (size_t i = 0; i < kerrows.size(); ++i) ker.row(i) = kerrows[i];
  ker.bottomRows(b.relations().rows()) = b.relations();
  MatZ im(inj.mat.rows() + b.relations().rows(), b.gens());
  im.topRows(inj.mat.rows()) = inj.mat;
  im.bottomRows(b.relations().rows()) = b.relations();
  if (!same_row_span(ker, im, m)) throw ZpError("ses: image differs from kernel");

  // injectivity: preimage of relations is exactly the relations of A
  MatZ pre_full = kernel_basis(vstack(inj.mat, b.relations()), m);
  std::vector<RowZ> prerows;
  for (Eigen::Index i = 0; i < pre_full.rows(); ++i) {
    RowZ x = pre_full.row(i).head(a.gens());
    if (!x.isZero()) prerows.push_back(x);
  }
  MatZ pre(prerows.size(), a.gens());
  for (size_t i = 0; i < prerows.size(); ++i) pre.row(i) = prerows[i];
  MatZ arel = a.relations().rows() == 0 ? MatZ(0, a.gens()) : MatZ(a.relations());
  if (!same_row_span(pre, arel, m)) throw ZpError("ses: injection is not injective");
}

RowZ map_cochain(const GModMap& f, int degree, const RowZ& z) {
  const int go = f.from.group().order();
  const Int nt = tuple_count(go, degree);
  RowZ out = RowZ::Zero(nt * f.to.gens());
  for (Int t = 0; t < nt; ++t)
    out.segment(t * f.to.gens(), f.to.gens()) =
        reduce(z.segment(t * f.from.gens(), f.from.gens()) * f.mat, f.to.mod());
  return out;
}

RowZ restrict_cochain(const GModule& m, const Subgroup& h, int degree, const RowZ& z) {
  const int k = m.gens();
  const int ho = h.group.order();
  RowZ out = RowZ::Zero(tuple_count(ho, degree) * k);
  for (Int t = 0; t < tuple_count(ho, degree); ++t) {
    std::vector<int> tup = index_to_tuple(t, ho, degree);
    std::vector<int> big(degree);
    for (int i = 0; i < degree; ++i) big[i] = h.embed[tup[i]];
    out.segment(t * k, k) = z.segment(tuple_to_index(big, m.group().order()) * k, k);
  }
  return out;
}

RowZ inflate_cochain(const GModule& m_over_quotient, const FiniteGroup& big,
                     const QuotientGroup& q, int degree, const RowZ& z) {
  const int k = m_over_quotient.gens();
  const int qo = m_over_quotient.group().order();
  RowZ out = RowZ::Zero(tuple_count(big.order(), degree) * k);
  for (Int t = 0; t < tuple_count(big.order(), degree); ++t) {
    std::vector<int> tup = index_to_tuple(t, big.order(), degree);
    std::vector<int> small(degree);
    for (int i = 0; i < degree; ++i) small[i] = q.project[tup[i]];
    out.segment(t * k, k) = z.segment(tuple_to_index(small, qo) * k, k);
  }
  return out;
}

RowZ cup_cochain(const Pairing& pairing, int deg_a, const RowZ& a, int deg_b,
                 const RowZ& b) {
  const FiniteGroup& g = pairing.target.group();
  const int go = g.order();
  const int n = deg_a + deg_b;
  RowZ out = RowZ::Zero(tuple_count(go, n) * pairing.target.gens());
  for (Int t = 0; t < tuple_count(go, n); ++t) {
    std::vector<int> tup = index_to_tuple(t, go, n);
    std::vector<int> front(tup.begin(), tup.begin() + deg_a);
    std::vector<int> back(tup.begin() + deg_a, tup.end());
    int prod = g.identity();
    for (int x : front) prod = g.mul(prod, x);
    RowZ va = cochain_value(pairing.a, a, front);
    RowZ vb = cochain_value(pairing.b, b, back);
    vb = pairing.b.act(prod, vb);
    set_cochain_value(pairing.target, out, tup, pairing.pair(va, vb));
  }
  return out;
}

RowZ connecting_cochain(const ModuleSES& ses, int degree, const RowZ& z) {
  const GModule& a = ses.inj.from;
  const GModule& b = ses.inj.to;
  const GModule& c = ses.surj.to;
  const Mod& mod = b.mod();
  const int go = b.group().order();
  // lift values of z through the surjection
  MatZ lift_sys = vstack(ses.surj.mat, c.relations());
  RowZ lifted = RowZ::Zero(tuple_count(go, degree) * b.gens());
  for (Int t = 0; t < tuple_count(go, degree); ++t) {
    auto sol = solve_row(lift_sys, z.segment(t * c.gens(), c.gens()), mod);
    if (!sol) throw ZpError("connecting map: value failed to lift");
    lifted.segment(t * b.gens(), b.gens()) = sol->head(b.gens());
  }
  RowZ w = reduce(lifted * bar_differential(b, degree), mod);
  // pull the boundary back through the injection
  MatZ pull_sys = vstack(ses.inj.mat, b.relations());
  RowZ out = RowZ::Zero(tuple_count(go, degree + 1) * a.gens());
  for (Int t = 0; t < tuple_count(go, degree + 1); ++t) {
    auto sol = solve_row(pull_sys, w.segment(t * b.gens(), b.gens()), mod);
    if (!sol) throw ZpError("connecting map: boundary not in the kernel");
    out.segment(t * a.gens(), a.gens()) = sol->head(a.gens());
  }
  return out;
}

RowZ shapiro_forward(const InducedModule& ind, const Subgroup& h, int degree,
                     const RowZ& z) {
  const GModule& im = ind.module;
  const int k = ind.base_gens;
  const int ho = h.group.order();
  RowZ out = RowZ::Zero(tuple_count(ho, degree) * k);
  const Mod& mod = im.mod();
  for (Int t = 0; t < tuple_count(ho, degree); ++t) {
    std::vector<int> tup = index_to_tuple(t, ho, degree);
    std::vector<int> big(degree);
    for (int i = 0; i < degree; ++i) big[i] = h.embed[tup[i]];
    RowZ v = z.segment(tuple_to_index(big, im.group().order()) * im.gens(), im.gens());
    out.segment(t * k, k) = reduce(v * ind.eval0, mod);
  }
  return out;
}

namespace {

// matrix of shapiro_forward as a linear map on cochain vectors
MatZ shapiro_forward_matrix(const InducedModule& ind, const Subgroup& h, int degree,
                            const GModule& base) {
  const GModule& im = ind.module;
  const int k = ind.base_gens;
  const int ho = h.group.order();
  const int go = im.group().order();
  MatZ f = MatZ::Zero(tuple_count(go, degree) * im.gens(), tuple_count(ho, degree) * k);
  for (Int t = 0; t < tuple_count(ho, degree); ++t) {
    std::vector<int> tup = index_to_tuple(t, ho, degree);
    std::vector<int> big(degree);
    for (int i = 0; i < degree; ++i) big[i] = h.embed[tup[i]];
    Int bt = tuple_to_index(big, go);
    f.block(bt * im.gens(), t * k, im.gens(), k) = ind.eval0;
  }
  (void)base;
  return f;
}

}  // namespace

RowZ shapiro_inverse(const InducedModule& ind, const Subgroup& h, int degree,
                     const RowZ& target) {
  const GModule& im = ind.module;
  const Mod& mod = im.mod();
  const GModule& base = ind.base;

  const MatZ dG = bar_differential(im, degree);
  const MatZ relG = relation_blocks(im, degree + 1);
  const MatZ fwd = shapiro_forward_matrix(ind, h, degree, base);
  const MatZ relH = relation_blocks(base, degree);
  const MatZ dHprev = degree > 0 ? bar_differential(base, degree - 1)
                                 : MatZ(0, tuple_count(h.group.order(), 0) * base.gens());

  const Int nz = dG.rows();
  const Int ny1 = relG.rows();
  const Int nw = dHprev.rows();
  const Int ny2 = relH.rows();
  const Int colsA = dG.cols();
  const Int colsB = fwd.cols();

  MatZ sys = MatZ::Zero(nz + ny1 + nw + ny2, colsA + colsB);
  sys.block(0, 0, nz, colsA) = dG;
  sys.block(0, colsA, nz, colsB) = fwd;
  sys.block(nz, 0, ny1, colsA) = relG;
  if (nw > 0) sys.block(nz + ny1, colsA, nw, colsB) = reduce(-dHprev, mod);
  if (ny2 > 0) sys.block(nz + ny1 + nw, colsA, ny2, colsB) = reduce(-relH, mod);

  RowZ rhs = RowZ::Zero(colsA + colsB);
  rhs.segment(colsA, colsB) = target;
  auto sol = solve_row(sys, rhs, mod);
  if (!sol) throw ZpError("shapiro inverse: no preimage (should be impossible)");
  return sol->head(nz);
}

RowZ corestrict_cochain(const GModule& m_over_g, const Subgroup& h, int degree,
                        const RowZ& z_over_h) {
  GModule mh = m_over_g.restricted(h);
  InducedModule ind = induced_module(m_over_g.group(), h, mh);
  RowZ zind = shapiro_inverse(ind, h, degree, z_over_h);
  GModMap tr;
  tr.from = ind.module;
  tr.to = m_over_g;
  tr.mat = ind.trace(m_over_g);
  tr.validate();
  return map_cochain(tr, degree, zind);
}

std::optional<RowZ> lift_class_through(const GModMap& f, int degree, const RowZ& target) {
  const GModule& a = f.from;
  const GModule& b = f.to;
  const Mod& mod = b.mod();
  const int go = a.group().order();

  const MatZ dA = bar_differential(a, degree);
  const MatZ relA = relation_blocks(a, degree + 1);
  MatZ fmat = MatZ::Zero(tuple_count(go, degree) * a.gens(),
                         tuple_count(go, degree) * b.gens());
  for (Int t = 0; t < tuple_count(go, degree); ++t)
    fmat.block(t * a.gens(), t * b.gens(), a.gens(), b.gens()) = f.mat;
  const MatZ relB = relation_blocks(b, degree);
  const MatZ dBprev = degree > 0 ? bar_differential(b, degree - 1)
                                 : MatZ(0, tuple_count(go, 0) * b.gens());

  const Int nz = dA.rows();
  const Int ny1 = relA.rows();
  const Int nw = dBprev.rows();
  const Int ny2 = relB.rows();
  const Int colsA = dA.cols();
  const Int colsB = fmat.cols();

  MatZ sys = MatZ::Zero(nz + ny1 + nw + ny2, colsA + colsB);
  sys.block(0, 0, nz, colsA) = dA;
  sys.block(0, colsA, nz, colsB) = fmat;
  sys.block(nz, 0, ny1, colsA) = relA;
  if (nw > 0) sys.block(nz + ny1, colsA, nw, colsB) = reduce(-dBprev, mod);
  if (ny2 > 0) sys.block(nz + ny1 + nw, colsA, ny2, colsB) = reduce(-relB, mod);

  RowZ rhs = RowZ::Zero(colsA + colsB);
  rhs.segment(colsA, colsB) = target;
  auto sol = solve_row(sys, rhs, mod);
  if (!sol) return std::nullopt;
  return RowZ(sol->head(nz));
}

bool surjective_on_classes(const GModMap& f, int degree) {
  auto target = cohomology(f.to, degree);
  for (int i = 0; i < target->rank(); ++i)
    if (!lift_class_through(f, degree, target->class_rep(i))) return false;
  return true;
}

}  // namespace wittlift
