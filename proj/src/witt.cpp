#include "wittlift/witt.hpp"

#include <map>
#include <mutex>

namespace wittlift {

QPoly ghost_poly(Int p, int i, int nvars, int offset) {
  QPoly w(nvars);
  Int pj = 1;
  for (int j = 0; j <= i; ++j) {
    int deg = 1;
    for (int t = 0; t < i - j; ++t) deg *= static_cast<int>(p);
    w = w + QPoly::variable(nvars, offset + j).pow(deg).scaled(Rat{pj, 1});
    pj *= p;
  }
  return w;
}

namespace {

UniversalWittPolys compute_universal(Int p, int r) {
  UniversalWittPolys u;
  u.p = p;
  u.r = r;
  const int nv2 = 2 * r, nv1 = r;
  for (int i = 0; i < r; ++i) {
    Int pi = 1;
    for (int t = 0; t < i; ++t) pi *= p;

    QPoly target_add = ghost_poly(p, i, nv2, 0) + ghost_poly(p, i, nv2, r);
    QPoly target_mul = ghost_poly(p, i, nv2, 0) * ghost_poly(p, i, nv2, r);
    QPoly target_neg = QPoly(nv1) - ghost_poly(p, i, nv1, 0);
    for (int j = 0; j < i; ++j) {
      Int pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      int deg = 1;
      for (int t = 0; t < i - j; ++t) deg *= static_cast<int>(p);
      target_add = target_add - u.add[j].pow(deg).scaled(Rat{pj, 1});
      target_mul = target_mul - u.mul[j].pow(deg).scaled(Rat{pj, 1});
      target_neg = target_neg - u.neg[j].pow(deg).scaled(Rat{pj, 1});
    }
    QPoly si = target_add.scaled(Rat::of(1, pi));
    QPoly pi_poly = target_mul.scaled(Rat::of(1, pi));
    QPoly ni = target_neg.scaled(Rat::of(1, pi));
    if (!si.is_integral() || !pi_poly.is_integral() || !ni.is_integral())
      throw ZpError("universal Witt polynomial failed integrality");
    u.add.push_back(std::move(si));
    u.mul.push_back(std::move(pi_poly));
    u.neg.push_back(std::move(ni));
  }
  return u;
}

std::map<std::pair<Int, int>, UniversalWittPolys> g_cache;
std::mutex g_cache_mutex;

}  // namespace

const UniversalWittPolys& universal_witt_polys(Int p, int r, Int bound) {
  Int pr = 1;
  for (int i = 0; i < r; ++i) {
    pr *= p;
    if (pr > bound) throw ZpError("Witt parameters exceed the configured bound");
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto key = std::make_pair(p, r);
  auto it = g_cache.find(key);
  if (it == g_cache.end()) it = g_cache.emplace(key, compute_universal(p, r)).first;
  return it->second;
}

WittRing::WittRing(FiniteAlgebra a, int r, Int bound) : alg_(std::move(a)), r_(r) {
  if (r < 1) throw ZpError("Witt length must be >= 1");
  polys_ = &universal_witt_polys(alg_.p(), r, bound);
  for (int i = 0; i < r_; ++i) {
    addp_.push_back(FpPoly::from_qpoly(polys_->add[i], alg_.p()));
    mulp_.push_back(FpPoly::from_qpoly(polys_->mul[i], alg_.p()));
    negp_.push_back(FpPoly::from_qpoly(polys_->neg[i], alg_.p()));
  }
}

void WittRing::check_elem(const Elem& x) const {
  if (x.rows() != r_ || x.cols() != alg_.dim()) throw ZpError("Witt element shape mismatch");
}

WittRing::Elem WittRing::zero() const { return MatZ::Zero(r_, alg_.dim()); }

WittRing::Elem WittRing::one() const { return teichmuller(alg_.one()); }

WittRing::Elem WittRing::teichmuller(const RowZ& a) const {
  Elem x = zero();
  x.row(0) = reduce(a, alg_.base_mod());
  return x;
}

WittRing::Elem WittRing::add(const Elem& x, const Elem& y) const {
  check_elem(x);
  check_elem(y);
  std::vector<RowZ> in;
  for (int j = 0; j < r_; ++j) in.push_back(x.row(j));
  for (int j = 0; j < r_; ++j) in.push_back(y.row(j));
  Elem out(r_, alg_.dim());
  for (int i = 0; i < r_; ++i) out.row(i) = eval_fp(addp_[i], alg_, in);
  return out;
}

WittRing::Elem WittRing::mul(const Elem& x, const Elem& y) const {
  check_elem(x);
  check_elem(y);
  std::vector<RowZ> in;
  for (int j = 0; j < r_; ++j) in.push_back(x.row(j));
  for (int j = 0; j < r_; ++j) in.push_back(y.row(j));
  Elem out(r_, alg_.dim());
  for (int i = 0; i < r_; ++i) out.row(i) = eval_fp(mulp_[i], alg_, in);
  return out;
}

WittRing::Elem WittRing::neg(const Elem& x) const {
  check_elem(x);
  std::vector<RowZ> in;
  for (int j = 0; j < r_; ++j) in.push_back(x.row(j));
  Elem out(r_, alg_.dim());
  for (int i = 0; i < r_; ++i) out.row(i) = eval_fp(negp_[i], alg_, in);
  return out;
}

WittRing::Elem WittRing::sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }

WittRing::Elem WittRing::scalar(Int n, const Elem& x) const {
  Int pr = 1;
  for (int i = 0; i < r_; ++i) pr *= alg_.p();
  n = mod_pos(n, pr);
  Elem acc = zero();
  Elem base = x;
  while (n > 0) {
    if (n & 1) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

WittRing::Elem WittRing::verschiebung(const Elem& x) const {
  check_elem(x);
  Elem out = zero();
  for (int j = 0; j + 1 < r_; ++j) out.row(j + 1) = x.row(j);
  return out;
}

WittRing::Elem WittRing::frobenius(const Elem& x) const {
  check_elem(x);
  Elem out(r_, alg_.dim());
  for (int j = 0; j < r_; ++j) out.row(j) = alg_.pow(x.row(j), alg_.p());
  return out;
}

WittRing::Elem WittRing::map_coeffs(const MatZ& ring_map, const Elem& x) const {
  Elem out(x.rows(), ring_map.cols());
  for (Eigen::Index j = 0; j < x.rows(); ++j)
    out.row(j) = reduce(x.row(j) * ring_map, alg_.base_mod());
  return out;
}

WittRing::Elem WittRing::truncate(const Elem& x, int r2) const {
  check_elem(x);
  if (r2 > r_ || r2 < 1) throw ZpError("truncate: bad target length");
  return x.topRows(r2);
}

WittRing::Elem WittRing::verschiebung_in(const Elem& shorter, int k) const {
  if (shorter.rows() != r_ - k) throw ZpError("verschiebung_in: length mismatch");
  Elem out = zero();
  for (int j = 0; j < r_ - k; ++j) out.row(j + k) = shorter.row(j);
  return out;
}

Int WittRing::encode(const Elem& x) const {
  check_elem(x);
  Int code = 0;
  for (int j = r_ - 1; j >= 0; --j) code = code * alg_.element_count() + alg_.encode(x.row(j));
  return code;
}

WittRing::Elem WittRing::decode(Int code) const {
  Elem x(r_, alg_.dim());
  for (int j = 0; j < r_; ++j) {
    x.row(j) = alg_.decode(code % alg_.element_count());
    code /= alg_.element_count();
  }
  return x;
}

Int WittRing::element_count() const {
  Int c = 1;
  for (int j = 0; j < r_; ++j) c *= alg_.element_count();
  return c;
}

std::vector<WittRing::Elem> WittRing::elements(Int limit) const {
  if (element_count() > limit) throw ZpError("Witt ring enumeration over limit");
  std::vector<Elem> out;
  out.reserve(element_count());
  for (Int c = 0; c < element_count(); ++c) out.push_back(decode(c));
  return out;
}

std::vector<RowZ> WittRing::v_digits(const Elem& x) const {
  check_elem(x);
  std::vector<RowZ> digits;
  Elem y = x;
  for (int j = 0; j < r_; ++j) {
    RowZ d = y.row(j);
    digits.push_back(d);
    Elem vj = zero();
    vj.row(j) = d;
    y = sub(y, vj);
  }
  if (!y.isZero()) throw ZpError("v_digits: decomposition failed");
  return digits;
}

WittRing::Elem WittRing::from_v_digits(const std::vector<RowZ>& digits) const {
  if (static_cast<int>(digits.size()) != r_) throw ZpError("from_v_digits: length");
  Elem acc = zero();
  for (int j = 0; j < r_; ++j) {
    Elem vj = zero();
    vj.row(j) = reduce(digits[j], alg_.base_mod());
    acc = add(acc, vj);
  }
  return acc;
}

}  // namespace wittlift
