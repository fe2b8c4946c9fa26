#include "wittlift/group.hpp"

#include <algorithm>
#include <set>

namespace wittlift {

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na * nb; ++i)
    for (int j = 0; j < na * nb; ++j)
      t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  FiniteGroup g;
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ZpError("empty group table");
  for (auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw ZpError("group table not square");
    for (int x : row)
      if (x < 0 || x >= n) throw ZpError("group table entry out of range");
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw ZpError("group table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw ZpError("group table not associative");
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == id) g.inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inv_[a] < 0) throw ZpError("group table element without inverse");
  g.table_ = std::move(table);
  g.id_ = id;
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  std::set<int> s(elements.begin(), elements.end());
  if (!s.count(id_)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(mul(a, b))) return false;
  for (int a : s)
    if (!s.count(inv(a))) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& elements) const {
  if (!is_subgroup(elements)) return false;
  std::set<int> s(elements.begin(), elements.end());
  for (int g = 0; g < order(); ++g)
    for (int h : s)
      if (!s.count(mul(mul(g, h), inv(g)))) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  const int n = order();
  if (n > 16) throw ZpError("subgroup enumeration bound exceeded");
  std::set<std::vector<int>> found;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::set<int> cl;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) cl.insert(i);
    cl.insert(id_);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(cl.begin(), cl.end());
      for (int a : cur)
        for (int b : cur)
          if (cl.insert(mul(a, b)).second) grew = true;
      for (int a : cur)
        if (cl.insert(inv(a)).second) grew = true;
    }
    found.insert(std::vector<int>(cl.begin(), cl.end()));
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Subgroup subgroup_of(const FiniteGroup& g, const std::vector<int>& elements) {
  if (!g.is_subgroup(elements)) throw ZpError("not a subgroup");
  std::vector<int> els = elements;
  std::sort(els.begin(), els.end());
  els.erase(std::unique(els.begin(), els.end()), els.end());
  const int k = static_cast<int>(els.size());
  Subgroup s;
  s.embed = els;
  s.index_in_sub.assign(g.order(), -1);
  for (int i = 0; i < k; ++i) s.index_in_sub[els[i]] = i;
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = s.index_in_sub[g.mul(els[i], els[j])];
  s.group = FiniteGroup::from_table(std::move(t));
  return s;
}

Subgroup full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return subgroup_of(g, all);
}

QuotientGroup quotient_by(const FiniteGroup& g, const std::vector<int>& normal_elements) {
  if (!g.is_normal(normal_elements)) throw ZpError("subgroup not normal");
  std::set<int> n(normal_elements.begin(), normal_elements.end());
  QuotientGroup q;
  q.project.assign(g.order(), -1);
  std::vector<int> reps;
  for (int seed = 0; seed <= g.order(); ++seed) {
    int x = seed == 0 ? g.identity() : seed - 1;
    if (x >= g.order() || q.project[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int h : n) q.project[g.mul(x, h)] = c;
  }
  const int k = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = q.project[g.mul(reps[i], reps[j])];
  q.group = FiniteGroup::from_table(std::move(t));
  return q;
}

RightCosets right_cosets(const FiniteGroup& g, const Subgroup& h) {
  RightCosets rc;
  rc.coset_of.assign(g.order(), -1);
  rc.h_part.assign(g.order(), -1);
  for (int seed = 0; seed <= g.order(); ++seed) {
    int x = seed == 0 ? g.identity() : seed - 1;
    if (x >= g.order() || rc.coset_of[x] >= 0) continue;
    int c = static_cast<int>(rc.reps.size());
    rc.reps.push_back(x);
    for (int i = 0; i < h.group.order(); ++i) {
      int y = g.mul(h.embed[i], x);  // y = h * t_c
      rc.coset_of[y] = c;
      rc.h_part[y] = i;
    }
  }
  return rc;
}

std::vector<int> left_coset_reps(const FiniteGroup& g, const std::vector<int>& h_elements) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int h : h_elements) seen[g.mul(x, h)] = 1;
  }
  return reps;
}

Character Character::restricted(const Subgroup& h) const {
  Character c;
  c.group = h.group;
  c.mod = mod;
  c.values.resize(h.group.order());
  for (int i = 0; i < h.group.order(); ++i) c.values[i] = values[h.embed[i]];
  return c;
}

bool Character::is_trivial() const {
  for (Int v : values)
    if (v != 1) return false;
  return true;
}

void Character::validate() const {
  if (static_cast<int>(values.size()) != group.order())
    throw ZpError("character table size mismatch");
  for (Int v : values) inv_mod(v, mod.n);  // throws on non-units
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      if (mod_pos(values[g] * values[h], mod.n) != values[group.mul(g, h)])
        throw ZpError("character is not multiplicative");
}

Character Character::trivial(const FiniteGroup& g, const Mod& m) {
  Character c;
  c.group = g;
  c.mod = m;
  c.values.assign(g.order(), 1);
  return c;
}

std::vector<Character> Character::all(const FiniteGroup& g, const Mod& m) {
  std::vector<Int> units;
  for (Int u = 1; u < m.n; ++u)
    if (u % m.p != 0) units.push_back(u);
  const int n = g.order();
  std::vector<Character> out;
  std::vector<size_t> pick(n, 0);
  while (true) {
    Character c;
    c.group = g;
    c.mod = m;
    c.values.resize(n);
    for (int i = 0; i < n; ++i) c.values[i] = units[pick[i]];
    bool ok = c.values[g.identity()] == 1;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        ok = mod_pos(c.values[a] * c.values[b], m.n) == c.values[g.mul(a, b)];
    if (ok) out.push_back(c);
    int s = 0;
    for (; s < n; ++s) {
      if (++pick[s] < units.size()) break;
      pick[s] = 0;
    }
    if (s == n) break;
  }
  return out;
}

std::vector<Character> Character::lifting(const Character& base, const Mod& m) {
  if (m.p != base.mod.p || m.r < base.mod.r) throw ZpError("bad character lift modulus");
  std::vector<Character> out;
  for (auto& c : Character::all(base.group, m)) {
    bool ok = true;
    for (size_t i = 0; i < c.values.size(); ++i)
      ok = ok && mod_pos(c.values[i], base.mod.n) == base.values[i];
    if (ok) out.push_back(c);
  }
  return out;
}

}  // namespace wittlift
