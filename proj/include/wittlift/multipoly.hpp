#pragma once

// Sparse multivariate polynomials with exact rational coefficients, just
// enough for inverting the ghost map. Coefficient arithmetic is overflow
// checked through 128-bit intermediates; a violation throws rather than
// silently wrapping.

#include "wittlift/algebra.hpp"
#include "wittlift/zpmod.hpp"

#include <map>
#include <vector>

namespace wittlift {

struct Rat {
  Int num = 0;
  Int den = 1;

  static Rat of(Int n, Int d = 1);
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
};

using Expo = std::vector<int>;

class QPoly {
 public:
  explicit QPoly(int nvars = 0) : nvars_(nvars) {}
  static QPoly constant(int nvars, Rat c);
  static QPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_integral() const;

  QPoly& add_term(Expo e, Rat c);

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly scaled(Rat c) const;
  QPoly pow(int e) const;
  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  // substitute integers for every variable, exactly (for oracle checks)
  Rat eval_rational(const std::vector<Int>& xs) const;

 private:
  int nvars_;
  std::map<Expo, Rat> terms_;
};

// Integer polynomial reduced mod p, in evaluation-friendly form.
struct FpPoly {
  int nvars = 0;
  Int p = 2;
  std::vector<std::pair<Expo, Int>> terms;

  static FpPoly from_qpoly(const QPoly& q, Int p);
};

// Evaluate with algebra elements as inputs, one per variable.
RowZ eval_fp(const FpPoly& poly, const FiniteAlgebra& a, const std::vector<RowZ>& inputs);

}  // namespace wittlift
