#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "wittlift/zpmod.hpp"

using namespace wittlift;

namespace {

std::vector<Int> encode_all(const MatZ& rows, const Mod& m) {
  // every Z/n-combination of the rows, encoded base-n
  const int k = static_cast<int>(rows.rows());
  const int c = static_cast<int>(rows.cols());
  std::set<Int> seen;
  std::vector<Int> coef(k, 0);
  while (true) {
    RowZ v = RowZ::Zero(c);
    for (int i = 0; i < k; ++i) v += coef[i] * rows.row(i);
    v = reduce(v, m);
    Int code = 0;
    for (int j = 0; j < c; ++j) code = code * m.n + v(j);
    seen.insert(code);
    int s = 0;
    for (; s < k; ++s) {
      if (++coef[s] < m.n) break;
      coef[s] = 0;
    }
    if (s == k) break;
  }
  if (k == 0) seen.insert(0);
  return {seen.begin(), seen.end()};
}

MatZ rows_from(std::vector<std::vector<Int>> data) {
  MatZ m(data.size(), data.empty() ? 0 : data[0].size());
  for (size_t i = 0; i < data.size(); ++i)
    for (size_t j = 0; j < data[i].size(); ++j) m(i, j) = data[i][j];
  return m;
}

}  // namespace

TEST_CASE("mod construction rejects composites") {
  CHECK_THROWS_AS(Mod::make(6), ZpError);
  CHECK_THROWS_AS(Mod::make(12), ZpError);
  Mod m = Mod::make(8);
  CHECK(m.p == 2);
  CHECK(m.r == 3);
  Mod m9 = Mod::make(9);
  CHECK(m9.p == 3);
  CHECK(m9.r == 2);
}

TEST_CASE("howell form fixed points") {
  Mod m = Mod::make(4);
  MatZ id3 = identity(3);
  CHECK(howell_form(id3, m) == id3);

  MatZ single = rows_from({{2}});
  CHECK(howell_form(single, m) == single);
}

TEST_CASE("howell form is idempotent and span preserving") {
  // all matrices with <= 3 rows over small moduli, sampled deterministically
  for (Int n : {4, 8, 9}) {
    Mod m = Mod::make(n);
    Int st = 0;
    for (int rows = 1; rows <= 3; ++rows) {
      for (int trial = 0; trial < 40; ++trial) {
        MatZ a(rows, 2);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < 2; ++j) {
            st = (st * 1103515245 + 12345) & 0x7fffffff;
            a(i, j) = st % n;
          }
        MatZ h = howell_form(a, m);
        CHECK(howell_form(h, m) == h);
        CHECK(encode_all(a, m) == encode_all(h, m));
      }
    }
  }
}

TEST_CASE("howell form is canonical across generating sets") {
  // transformed generating sets of the same row module have equal forms
  for (Int n : {4, 8, 9}) {
    Mod m = Mod::make(n);
    Int st = 17;
    auto rnd = [&](Int bound) {
      st = (st * 1103515245 + 12345) & 0x7fffffff;
      return st % bound;
    };
    for (int trial = 0; trial < 30; ++trial) {
      MatZ a(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = rnd(n);
      // b: shuffled rows, one row rescaled by a unit, one replaced by a sum,
      // plus an appended combination
      MatZ b(4, 3);
      b.row(0) = a.row(2);
      Int u = 1 + 2 * rnd((n - 1) / 2 == 0 ? 1 : (n - 1) / 2);  // odd => unit for p=2
      if (n == 9) u = (rnd(2) == 0) ? 2 : 4;                    // units mod 9
      b.row(1) = reduce(u * a.row(0), m);
      b.row(2) = reduce(a.row(1) + a.row(0), m);
      b.row(3) = reduce(rnd(n) * a.row(0) + rnd(n) * a.row(1) + rnd(n) * a.row(2), m);
      MatZ ha = howell_form(a, m), hb = howell_form(b, m);
      CHECK(ha == hb);
    }
  }
}

TEST_CASE("howell form of dependent rows over Z/4") {
  Mod m = Mod::make(4);
  MatZ a = rows_from({{2, 0}, {0, 2}, {1, 1}});
  MatZ h = howell_form(a, m);
  CHECK(encode_all(a, m).size() == 8);
  CHECK(encode_all(h, m).size() == 8);
}

TEST_CASE("kernel examples from small rings") {
  {
    Mod m = Mod::make(4);  // Z/p^2, p=2
    MatZ a = rows_from({{2}});
    MatZ k = kernel_basis(a, m);
    CHECK(same_row_span(k, rows_from({{2}}), m));
  }
  {
    Mod m = Mod::make(9);
    MatZ a = rows_from({{3}});
    MatZ k = kernel_basis(a, m);
    CHECK(same_row_span(k, rows_from({{3}}), m));
  }
  {
    Mod m = Mod::make(8);
    MatZ a = rows_from({{2}});
    MatZ k = kernel_basis(a, m);
    // exhaustive scan of Z/8: 2x = 0 iff x in {0,4}
    CHECK(same_row_span(k, rows_from({{4}}), m));
  }
  {
    Mod m = Mod::make(8);
    CHECK(kernel_basis(identity(3), m).rows() == 0);
  }
}

TEST_CASE("kernel agrees with exhaustive scan on random matrices") {
  for (Int n : {4, 9, 8}) {
    Mod m = Mod::make(n);
    Int st = 7;
    for (int trial = 0; trial < 30; ++trial) {
      MatZ a(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          st = (st * 1103515245 + 12345) & 0x7fffffff;
          a(i, j) = st % n;
        }
      MatZ k = kernel_basis(a, m);
      // oracle: scan all x in (Z/n)^2
      std::vector<RowZ> kervecs;
      for (Int x0 = 0; x0 < n; ++x0)
        for (Int x1 = 0; x1 < n; ++x1) {
          RowZ x(2);
          x << x0, x1;
          if (reduce(x * a, m).isZero()) kervecs.push_back(x);
        }
      MatZ oracle(kervecs.size(), 2);
      for (size_t i = 0; i < kervecs.size(); ++i) oracle.row(i) = kervecs[i];
      CHECK(same_row_span(k, oracle, m));
      for (Eigen::Index i = 0; i < k.rows(); ++i)
        CHECK(reduce(k.row(i) * a, m).isZero());
    }
  }
}

TEST_CASE("solve_row basic cases") {
  Mod m = Mod::make(4);
  {
    RowZ b(3);
    b << 1, 2, 3;
    auto x = solve_row(identity(3), b, m);
    REQUIRE(x.has_value());
    CHECK(*x == b);
  }
  {
    MatZ a = rows_from({{2}});
    RowZ b1(1);
    b1 << 1;
    CHECK(!solve_row(a, b1, m).has_value());
    RowZ b2(1);
    b2 << 2;
    auto x = solve_row(a, b2, m);
    REQUIRE(x.has_value());
    CHECK(mod_pos((*x)(0) * 2, 4) == 2);
  }
}

TEST_CASE("solve_row matches exhaustive solvability") {
  for (Int n : {4, 9}) {
    Mod m = Mod::make(n);
    Int st = 3;
    for (int trial = 0; trial < 25; ++trial) {
      MatZ a(2, 2);
      RowZ b(2);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          st = (st * 1103515245 + 12345) & 0x7fffffff;
          a(i, j) = st % n;
        }
        st = (st * 1103515245 + 12345) & 0x7fffffff;
        b(i) = st % n;
      }
      bool oracle = false;
      for (Int x0 = 0; x0 < n && !oracle; ++x0)
        for (Int x1 = 0; x1 < n && !oracle; ++x1) {
          RowZ x(2);
          x << x0, x1;
          if (reduce(x * a - b, m).isZero()) oracle = true;
        }
      auto x = solve_row(a, b, m);
      CHECK(x.has_value() == oracle);
      if (x) CHECK(reduce(*x * a - b, m).isZero());
    }
  }
}

TEST_CASE("coset representatives are unique per coset") {
  Mod m = Mod::make(4);
  MatZ h = howell_form(rows_from({{2, 1}}), m);
  std::set<std::pair<Int, Int>> reps;
  std::set<std::pair<Int, Int>> all;
  for (Int a = 0; a < 4; ++a)
    for (Int b = 0; b < 4; ++b) {
      RowZ v(2);
      v << a, b;
      RowZ c = coset_reduce(h, v, m);
      reps.insert({c(0), c(1)});
      all.insert({a, b});
    }
  CHECK(reps.size() == all.size() / encode_all(h, m).size());
}

TEST_CASE("quotient invariants") {
  {
    Mod m = Mod::make(9);
    auto inv = quotient_invariants(identity(2), MatZ(0, 2), m);
    CHECK(inv == std::vector<Int>{9, 9});
  }
  {
    Mod m = Mod::make(4);
    auto inv = quotient_invariants(identity(1), rows_from({{2}}), m);
    CHECK(inv == std::vector<Int>{2});
  }
  {
    Mod m = Mod::make(4);
    auto inv = quotient_invariants(identity(2), rows_from({{2, 0}, {0, 1}}), m);
    CHECK(inv == std::vector<Int>{2});
  }
}

TEST_CASE("quotient order equals brute force count") {
  for (Int n : {4, 8, 9}) {
    Mod m = Mod::make(n);
    Int st = 11;
    for (int trial = 0; trial < 20; ++trial) {
      MatZ rels(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          st = (st * 1103515245 + 12345) & 0x7fffffff;
          rels(i, j) = st % n;
        }
      Subquotient q(identity(2), rels, m);
      Int expect = (n * n) / static_cast<Int>(encode_all(rels, m).size());
      CHECK(q.order() == expect);
      // coords/from_coords round trip on every element
      auto classes = q.enumerate();
      CHECK(static_cast<Int>(classes.size()) == expect);
      std::set<std::vector<Int>> distinct;
      for (auto& v : classes) distinct.insert({v(0), v(1)});
      CHECK(distinct.size() == classes.size());
      for (auto& v : classes) {
        RowZ c = q.coords(v);
        CHECK(q.is_zero(reduce(q.from_coords(c) - v, m)));
      }
    }
  }
}

TEST_CASE("subquotient of a proper submodule") {
  // M = span{(2,0),(0,1)} in (Z/4)^2, R = span{(0,2)}: M/R = Z/2 x Z/2
  Mod m = Mod::make(4);
  Subquotient q(rows_from({{2, 0}, {0, 1}}), rows_from({{0, 2}}), m);
  CHECK(q.invariants() == std::vector<Int>{2, 2});
  CHECK(q.order() == 4);
  CHECK(q.contains(rows_from({{2, 3}}).row(0)));
  CHECK(!q.contains(rows_from({{1, 0}}).row(0)));
}
