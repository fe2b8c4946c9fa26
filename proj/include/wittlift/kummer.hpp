#pragma once

// The decision procedures and constructive algorithms on top of the stack:
// cyclotomic-pair checking, the cyclothymic witness search, Frobenius
// factorization through permutation modules, rank-one cocycle lifting,
// Laurent extensions at finite level, smoothness instance checks, and the
// e_1-cup identity.

#include "wittlift/extensions.hpp"
#include "wittlift/wittmodule.hpp"

#include <optional>
#include <string>

namespace wittlift {

struct CyclotomicData {
  FiniteGroup group;
  Int p = 2;
  int e = 1;       // depth
  int degree = 1;  // n
  Character chi;   // modulus p^{e+1}

  Mod top_mod() const;
  void validate() const;
};

struct SubgroupReport {
  std::vector<int> elements;
  bool surjective = false;
  Int top_order = 0;
  Int bottom_order = 0;
  std::optional<RowZ> witness;  // an unliftable bottom class over the subgroup
};

struct CyclotomicReport {
  bool is_cyclotomic = false;
  std::vector<SubgroupReport> subgroups;
};

CyclotomicReport is_cyclotomic_pair(const CyclotomicData& data);

struct CyclothymicInput {
  std::vector<int> subgroup_elements;
  RowZ class_over_subgroup;  // degree-n cocycle over (H, Z/p(theta|_H))
};

// search over characters lifting theta; the lift module depends on the input
std::optional<Character> is_cyclothymic_witness(const FiniteGroup& g, int degree, int e,
                                                const Character& theta_mod_p,
                                                const std::vector<CyclothymicInput>& inputs);

struct FitFactorization {
  int m = 0;
  int x_size = 0;
  std::vector<std::vector<int>> x_perm;       // per group element
  MatZ f;                                     // dim(A) x |X|
  MatZ g;                                     // |X| x dim(A)
  std::vector<int> orbit_rep;                 // basis index per orbit
  std::vector<std::vector<int>> orbit_of;     // basis indices per orbit
  std::vector<std::vector<int>> stabilizers;  // ambient group elements per orbit
};

// Frobenius factorization of an Artinian algebra through the permutation
// module P(A); m is nilpotency-minimal and the identity g o f = Frob^m holds
// as exact matrices.
FitFactorization fit_factorization(const FiniteAlgebra& a, const AlgebraAction& action);

struct LiftReport {
  int m = 0;                // minimal exponent (re-checked from 0 upward)
  int m_ladder = 0;         // exponent produced by the constructive route
  int m_of_a = 0;           // FIT exponent of the ambient algebra
  RowZ lift;                // cocycle over W_{e+1}(A)(1) lifting Frob^m c
  RowZ ladder_lift;         // the constructive witness at m_ladder
  std::vector<RowZ> chain;  // intermediate constructive lifts, one per level
};

// Working context for lifting: the tower W_1(A)(1) ... W_{e+1}(A)(1) at the
// common ambient modulus p^{e+1}.
class LiftContext {
 public:
  LiftContext(const CyclotomicData& data, FiniteAlgebra a, AlgebraAction action);
  const WittModule& level(int s) const;  // 1 <= s <= e+1
  const CyclotomicData& data() const { return data_; }
  const FiniteAlgebra& algebra() const { return alg_; }
  GModMap truncation(int from_s, int to_s) const;
  GModMap verschiebung(int from_s, int to_s) const;
  RowZ frob_pullback(int s, const RowZ& cocycle, int times) const;

 private:
  CyclotomicData data_;
  FiniteAlgebra alg_;
  AlgebraAction action_;
  std::vector<std::shared_ptr<const WittModule>> levels_;
};

LiftReport lift_cocycle_rank1(const CyclotomicData& data, const FiniteAlgebra& a,
                              const AlgebraAction& action, int r, const RowZ& c);

struct InvertibleModuleDescriptor {
  bool free_rank_one = true;
  std::string label = "O_S";
};

struct InvertibleLiftReport {
  LiftReport base;
  std::string line_bundle_tag;  // records the L^{p^m} bookkeeping
};

InvertibleLiftReport lift_cocycle_invertible(const CyclotomicData& data,
                                             const FiniteAlgebra& a,
                                             const AlgebraAction& action, int r,
                                             const RowZ& c,
                                             const InvertibleModuleDescriptor& line);

struct LaurentModel {
  FiniteGroup big;            // (Z/p^k)(1) semidirect G
  std::vector<int> proj;      // big index -> base group index
  std::vector<Int> kernel_x;  // big index -> normal component
  std::vector<int> embed_kernel;  // x -> big index of (x, identity)
  GModule coefficients;       // Z/p^k(1) over the big group
  RowZ t_cocycle;
  int level = 1;
};

LaurentModel laurent_model(const CyclotomicData& data, int k);
// cup with (t): class over Z/p^k(i) -> class over Z/p^k(i+1)
RowZ cup_with_t(const LaurentModel& lm, const CyclotomicData& data, int i_power,
                int degree, const RowZ& cls);

struct SmoothCheckReport {
  bool surjective = false;
  B2Surjectivity detail;
};
SmoothCheckReport smooth_instance_check(const FiniteAlgebra& a, const AlgebraAction& action,
                                        Int bound = 1 << 22);

struct KummerIdentityReport {
  bool reduction_matches = false;
  bool identity_holds = false;
  RowZ lhs, rhs;  // canonical H^2 classes of e1 cup e1 and chi cup e1
};
// p = 2; checks that the given Z/4-extension lifts the e_1 extension and
// compares e_1 cup e_1 with chi cup e_1 in H^2(G, F_2)
KummerIdentityReport kummer_identity_check(const FiniteGroup& g, const RowZ& e1,
                                           const Character& chi_mod4,
                                           const GModExtension& lifted);

}  // namespace wittlift
