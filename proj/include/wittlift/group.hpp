#pragma once

// Finite groups by explicit multiplication table. These stand in for the
// profinite groups of the underlying theory: every naive action and every
// cocycle with finite coefficients factors through a finite quotient, so a
// finite model loses nothing at this scale.

#include "wittlift/zpmod.hpp"

#include <string>
#include <vector>

namespace wittlift {

class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  // Table entries table[g][h] = g*h; the identity may sit at any index.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int g, int h) const { return table_[g][h]; }
  int inv(int g) const { return inv_[g]; }
  int identity() const { return id_; }
  bool is_abelian() const;

  // Complete list of subgroups as sorted element sets.
  std::vector<std::vector<int>> subgroups() const;
  bool is_subgroup(const std::vector<int>& elements) const;
  bool is_normal(const std::vector<int>& elements) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  int id_ = 0;
};

// A subgroup realized as an abstract group together with its embedding.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> embed;          // subgroup index -> ambient index
  std::vector<int> index_in_sub;   // ambient index -> subgroup index or -1

  int ambient(int h) const { return embed[h]; }
};

Subgroup subgroup_of(const FiniteGroup& g, const std::vector<int>& elements);
Subgroup full_subgroup(const FiniteGroup& g);

// Quotient by a normal subgroup: abstract group plus the projection table.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> project;  // ambient index -> quotient index
};
QuotientGroup quotient_by(const FiniteGroup& g, const std::vector<int>& normal_elements);

// Representatives t_c of the right cosets H\G (t_0 = identity), with the
// factorization x = h * t_c of every ambient element.
struct RightCosets {
  std::vector<int> reps;
  std::vector<int> coset_of;   // ambient -> coset index
  std::vector<int> h_part;     // ambient -> subgroup index of h in x = h * t_c
};
RightCosets right_cosets(const FiniteGroup& g, const Subgroup& h);

std::vector<int> left_coset_reps(const FiniteGroup& g, const std::vector<int>& h_elements);

// Multiplicative character G -> (Z/p^r)^x.
struct Character {
  FiniteGroup group;
  Mod mod;
  std::vector<Int> values;

  Int operator()(int g) const { return values[g]; }
  Character restricted(const Subgroup& h) const;
  bool is_trivial() const;
  void validate() const;

  static Character trivial(const FiniteGroup& g, const Mod& m);
  static std::vector<Character> all(const FiniteGroup& g, const Mod& m);
  // all characters congruent to `base` modulo p
  static std::vector<Character> lifting(const Character& base, const Mod& m);
};

}  // namespace wittlift
