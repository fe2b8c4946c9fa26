#include <doctest.h>

#include <set>

#include "wittlift/witt.hpp"

using namespace wittlift;

namespace {

FiniteAlgebra f4() { return FiniteAlgebra::finite_field(2, {1, 1, 1}); }

QPoly qvar(int nv, int i) { return QPoly::variable(nv, i); }

Int ghost_int(Int p, int i, const std::vector<Int>& x) {
  // w_i = sum_j p^j x_j^(p^(i-j)) over plain integers
  Int acc = 0, pj = 1;
  for (int j = 0; j <= i; ++j) {
    Int deg = 1;
    for (int t = 0; t < i - j; ++t) deg *= p;
    Int pw = 1;
    for (Int t = 0; t < deg; ++t) pw *= x[j];
    acc += pj * pw;
    pj *= p;
  }
  return acc;
}

}  // namespace

TEST_CASE("frozen first-level addition polynomials") {
  {
    auto& u = universal_witt_polys(2, 2);
    // S_1 = a_1 + b_1 - a_0 b_0 over variables a_0 a_1 b_0 b_1
    QPoly expect = qvar(4, 1) + qvar(4, 3) - qvar(4, 0) * qvar(4, 2);
    CHECK(u.add[1] == expect);
  }
  {
    auto& u = universal_witt_polys(3, 2);
    QPoly a0 = qvar(4, 0), b0 = qvar(4, 2);
    QPoly expect = qvar(4, 1) + qvar(4, 3) - a0 * a0 * b0 - a0 * b0 * b0;
    CHECK(u.add[1] == expect);
  }
  for (Int p : {2, 3, 5}) {
    auto& u = universal_witt_polys(p, 2);
    // P_1 = a_0^p b_1 + a_1 b_0^p + p a_1 b_1
    QPoly expect = qvar(4, 0).pow(p) * qvar(4, 3) + qvar(4, 1) * qvar(4, 2).pow(p) +
                   (qvar(4, 1) * qvar(4, 3)).scaled(Rat{p, 1});
    CHECK(u.mul[1] == expect);
  }
}

TEST_CASE("ghost identities hold at random integer points") {
  Int st = 99;
  for (auto [p, r] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
    auto& u = universal_witt_polys(p, r);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Int> ab(2 * r);
      for (auto& v : ab) {
        st = (st * 1103515245 + 12345) & 0x7fffffff;
        v = (st % 7) - 3;
      }
      std::vector<Int> a(ab.begin(), ab.begin() + r), b(ab.begin() + r, ab.end());
      for (int i = 0; i < r; ++i) {
        std::vector<Int> s, m, n;
        for (int j = 0; j <= i; ++j) {
          Rat sv = u.add[j].eval_rational(ab);
          Rat mv = u.mul[j].eval_rational(ab);
          Rat nv = u.neg[j].eval_rational(a);
          REQUIRE(sv.is_integer());
          s.push_back(sv.num);
          m.push_back(mv.num);
          n.push_back(nv.num);
        }
        CHECK(ghost_int(p, i, s) == ghost_int(p, i, a) + ghost_int(p, i, b));
        CHECK(ghost_int(p, i, m) == ghost_int(p, i, a) * ghost_int(p, i, b));
        CHECK(ghost_int(p, i, n) == -ghost_int(p, i, a));
      }
    }
  }
}

TEST_CASE("bound rejects oversized parameters") {
  CHECK_THROWS_AS(universal_witt_polys(2, 8), ZpError);
  CHECK_THROWS_AS(WittRing(FiniteAlgebra::prime_field(5), 4), ZpError);
}

TEST_CASE("basic identities in W_2(F_2)") {
  WittRing w(FiniteAlgebra::prime_field(2), 2);
  auto one = w.one();
  auto two = w.add(one, one);
  MatZ expect(2, 1);
  expect << 0, 1;
  CHECK(two == expect);
  CHECK(w.add(two, w.neg(two)) == w.zero());
  // tau is not additive: tau(1) + tau(1) != tau(0)
  CHECK(two != w.teichmuller(RowZ::Zero(1)));
}

TEST_CASE("ring axioms hold exhaustively on W_2") {
  std::vector<FiniteAlgebra> algs = {FiniteAlgebra::prime_field(2),
                                     FiniteAlgebra::prime_field(3), f4(),
                                     FiniteAlgebra::truncated_poly(2, 2)};
  for (auto& a : algs) {
    WittRing w(a, 2);
    auto els = w.elements();
    for (auto& x : els)
      for (auto& y : els) {
        CHECK(w.add(x, y) == w.add(y, x));
        CHECK(w.mul(x, y) == w.mul(y, x));
      }
    // spot-check associativity and distributivity on a deterministic slice
    for (size_t i = 0; i < els.size(); ++i)
      for (size_t j = 0; j < els.size(); ++j) {
        auto& x = els[i];
        auto& y = els[j];
        auto& z = els[(i * 7 + j * 3 + 1) % els.size()];
        CHECK(w.add(w.add(x, y), z) == w.add(x, w.add(y, z)));
        CHECK(w.mul(w.mul(x, y), z) == w.mul(x, w.mul(y, z)));
        CHECK(w.mul(x, w.add(y, z)) == w.add(w.mul(x, y), w.mul(x, z)));
      }
  }
}

TEST_CASE("W_r(F_p) is Z/p^r") {
  for (Int p : {2, 3, 5}) {
    for (int r = 1; r <= 3; ++r) {
      WittRing w(FiniteAlgebra::prime_field(p), r);
      Int pr = 1;
      for (int i = 0; i < r; ++i) pr *= p;
      std::vector<WittRing::Elem> image;
      for (Int n = 0; n < pr; ++n) image.push_back(w.scalar(n, w.one()));
      // bijectivity
      for (Int n = 0; n < pr; ++n)
        for (Int k = 0; k < n; ++k) CHECK(image[n] != image[k]);
      // ring homomorphism
      for (Int n = 0; n < pr; ++n)
        for (Int k = 0; k < pr; ++k) {
          CHECK(w.add(image[n], image[k]) == image[(n + k) % pr]);
          CHECK(w.mul(image[n], image[k]) == image[(n * k) % pr]);
        }
    }
  }
}

TEST_CASE("verschiebung shifts and is additive") {
  WittRing w2(FiniteAlgebra::prime_field(2), 2);
  MatZ x(2, 1);
  x << 1, 0;
  MatZ vx(2, 1);
  vx << 0, 1;
  CHECK(w2.verschiebung(x) == vx);

  WittRing w3(FiniteAlgebra::prime_field(3), 2);
  auto els = w3.elements();
  for (auto& a : els)
    for (auto& b : els)
      CHECK(w3.verschiebung(w3.add(a, b)) == w3.add(w3.verschiebung(a), w3.verschiebung(b)));
}

TEST_CASE("frobenius properties") {
  {
    WittRing w(f4(), 2);
    for (auto& x : w.elements()) {
      auto fv = w.frobenius(w.verschiebung(x));
      auto vf = w.verschiebung(w.frobenius(x));
      auto px = w.scalar(2, x);
      CHECK(fv == vf);
      CHECK(fv == px);
    }
  }
  {
    // Frob is the identity on W_r(F_p)
    WittRing w(FiniteAlgebra::prime_field(3), 3);
    for (auto& x : w.elements()) CHECK(w.frobenius(x) == x);
  }
  {
    auto F4 = f4();
    WittRing w(F4, 2);
    for (Int c = 0; c < F4.element_count(); ++c) {
      RowZ a = F4.decode(c);
      CHECK(w.frobenius(w.teichmuller(a)) == w.teichmuller(F4.pow(a, 2)));
    }
  }
}

TEST_CASE("teichmuller is multiplicative") {
  auto F9 = FiniteAlgebra::finite_field(3, {1, 0, 1});
  WittRing w(F9, 2);
  for (Int i = 0; i < F9.element_count(); ++i)
    for (Int j = 0; j < F9.element_count(); ++j) {
      RowZ a = F9.decode(i), b = F9.decode(j);
      CHECK(w.mul(w.teichmuller(a), w.teichmuller(b)) == w.teichmuller(F9.mul(a, b)));
    }
}

TEST_CASE("truncation tower") {
  WittRing w3(FiniteAlgebra::prime_field(2), 3);
  WittRing w2(FiniteAlgebra::prime_field(2), 2);
  for (auto& x : w3.elements()) {
    CHECK(w3.truncate(x, 3) == x);
    CHECK(w3.truncate(x, 1) == w2.truncate(w3.truncate(x, 2), 1));
  }
  CHECK_THROWS_AS(w3.truncate(w3.zero(), 4), ZpError);
  // truncation is a ring map
  for (auto& x : w3.elements())
    for (int c = 0; c < 8; ++c) {
      auto y = w3.decode(c);
      CHECK(w3.truncate(w3.add(x, y), 2) == w2.add(w3.truncate(x, 2), w3.truncate(y, 2)));
      CHECK(w3.truncate(w3.mul(x, y), 2) == w2.mul(w3.truncate(x, 2), w3.truncate(y, 2)));
    }
}

TEST_CASE("kernel of truncation is the image of verschiebung") {
  auto F4 = f4();
  WittRing w3(F4, 3);
  for (int rp : {1, 2}) {
    std::set<Int> kernel, image;
    for (auto& x : w3.elements()) {
      if (w3.truncate(x, rp).isZero()) kernel.insert(w3.encode(x));
    }
    WittRing shorter(F4, 3 - rp);
    for (auto& y : shorter.elements()) {
      // V^rp applied rp times inside W_3
      image.insert(w3.encode(w3.verschiebung_in(y, rp)));
    }
    CHECK(kernel == image);
  }
}

TEST_CASE("witt vectors commute with finite products") {
  // ring structure of W_r(A x A') is computed blockwise; this is what makes
  // W_r(Ind_H^G A) = Ind_H^G(W_r A)
  auto f2 = FiniteAlgebra::prime_field(2);
  auto f4a = f4();
  auto prod = FiniteAlgebra::product({f2, f4a});
  WittRing wp(prod, 2);
  WittRing w1(f2, 2);
  WittRing w2(f4a, 2);
  auto leftc = [&](const WittRing::Elem& x) { return MatZ(x.leftCols(1)); };
  auto rightc = [&](const WittRing::Elem& x) { return MatZ(x.rightCols(2)); };
  for (auto& x : wp.elements())
    for (int c = 0; c < 8; ++c) {
      auto y = wp.decode(c * 5 % wp.element_count());
      auto sum = wp.add(x, y);
      auto prodxy = wp.mul(x, y);
      CHECK(leftc(sum) == w1.add(leftc(x), leftc(y)));
      CHECK(rightc(sum) == w2.add(rightc(x), rightc(y)));
      CHECK(leftc(prodxy) == w1.mul(leftc(x), leftc(y)));
      CHECK(rightc(prodxy) == w2.mul(rightc(x), rightc(y)));
    }
}

TEST_CASE("induced algebra commutes with witt vectors") {
  // Ind_1^{C_2}(F_2) = F_2 x F_2 with the swap; the G-action on W_2 of it is
  // the block swap, which is exactly the induced action of W_2(F_2)
  auto c2 = FiniteGroup::cyclic(2);
  auto f2 = FiniteAlgebra::prime_field(2);
  auto ind = induced_algebra(c2, subgroup_of(c2, {0}), f2,
                             AlgebraAction::trivial(FiniteGroup::trivial(), f2));
  WittRing w(ind.algebra, 2);
  for (auto& x : w.elements()) {
    auto moved = w.map_coeffs(ind.action.mats[1], x);
    MatZ expect(2, 2);
    expect.col(0) = x.col(1);
    expect.col(1) = x.col(0);
    CHECK(moved == expect);
  }
}

TEST_CASE("v-digit decomposition is exact and unique") {
  auto dual = FiniteAlgebra::truncated_poly(2, 2);
  WittRing w(dual, 2);
  std::set<Int> seen;
  for (auto& x : w.elements()) {
    auto d = w.v_digits(x);
    CHECK(w.from_v_digits(d) == x);
    Int code = 0;
    for (auto& row : d) code = code * dual.element_count() + dual.encode(row);
    CHECK(!seen.count(code));
    seen.insert(code);
  }
}
