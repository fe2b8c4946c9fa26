#include "wittlift/multipoly.hpp"

#include <numeric>

namespace wittlift {

namespace {

using I128 = __int128;

Int checked(I128 v) {
  if (v > INT64_MAX / 4 || v < INT64_MIN / 4)
    throw ZpError("rational arithmetic overflow; polynomial too large");
  return static_cast<Int>(v);
}

I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat Rat::of(Int n, Int d) {
  if (d == 0) throw ZpError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rat{n, d};
}

Rat operator+(const Rat& a, const Rat& b) {
  I128 n = (I128)a.num * b.den + (I128)b.num * a.den;
  I128 d = (I128)a.den * b.den;
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rat{checked(n), checked(d)};
}

Rat operator-(const Rat& a, const Rat& b) { return a + Rat{-b.num, b.den}; }

Rat operator*(const Rat& a, const Rat& b) {
  I128 n = (I128)a.num * b.num;
  I128 d = (I128)a.den * b.den;
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rat{checked(n), checked(d)};
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.num == 0) throw ZpError("rational division by zero");
  Rat inv = b.num < 0 ? Rat{-b.den, -b.num} : Rat{b.den, b.num};
  return a * inv;
}

QPoly QPoly::constant(int nvars, Rat c) {
  QPoly p(nvars);
  if (!c.is_zero()) p.terms_[Expo(nvars, 0)] = c;
  return p;
}

QPoly QPoly::variable(int nvars, int i) {
  QPoly p(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms_[e] = Rat{1, 1};
  return p;
}

bool QPoly::is_integral() const {
  for (auto& [e, c] : terms_)
    if (!c.is_integer()) return false;
  return true;
}

QPoly& QPoly::add_term(Expo e, Rat c) {
  auto it = terms_.find(e);
  Rat acc = it == terms_.end() ? c : it->second + c;
  if (acc.is_zero())
    terms_.erase(e);
  else
    terms_[e] = acc;
  return *this;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly out = a;
  for (auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QPoly out = a;
  for (auto& [e, c] : b.terms_) out.add_term(e, Rat{-c.num, c.den});
  return out;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly out(a.nvars_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Expo e = ea;
      for (int i = 0; i < out.nvars_; ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  return out;
}

QPoly QPoly::scaled(Rat c) const {
  QPoly out(nvars_);
  if (c.is_zero()) return out;
  for (auto& [e, v] : terms_) out.terms_[e] = v * c;
  return out;
}

QPoly QPoly::pow(int e) const {
  QPoly out = QPoly::constant(nvars_, Rat{1, 1});
  QPoly base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

Rat QPoly::eval_rational(const std::vector<Int>& xs) const {
  Rat acc{0, 1};
  for (auto& [e, c] : terms_) {
    Rat term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * Rat{xs[i], 1};
    acc = acc + term;
  }
  return acc;
}

FpPoly FpPoly::from_qpoly(const QPoly& q, Int p) {
  if (!q.is_integral()) throw ZpError("reducing a non-integral polynomial mod p");
  FpPoly out;
  out.nvars = q.nvars();
  out.p = p;
  for (auto& [e, c] : q.terms()) {
    Int v = mod_pos(c.num, p);
    if (v != 0) out.terms.emplace_back(e, v);
  }
  return out;
}

RowZ eval_fp(const FpPoly& poly, const FiniteAlgebra& a, const std::vector<RowZ>& inputs) {
  if (static_cast<int>(inputs.size()) != poly.nvars)
    throw ZpError("eval_fp: wrong number of inputs");
  if (a.dim() == 1) {
    // scalar fast path: plain residue arithmetic, no matrix temporaries
    const Int p = a.p();
    std::vector<std::vector<Int>> pw(poly.nvars, {1});
    Int acc = 0;
    for (auto& [e, c] : poly.terms) {
      Int term = c;
      for (int i = 0; i < poly.nvars; ++i) {
        if (e[i] == 0) continue;
        auto& powers = pw[i];
        while (static_cast<int>(powers.size()) <= e[i])
          powers.push_back(mod_pos(powers.back() * inputs[i](0), p));
        term = mod_pos(term * powers[e[i]], p);
      }
      acc = mod_pos(acc + term, p);
    }
    RowZ out(1);
    out(0) = acc;
    return out;
  }
  std::vector<std::vector<RowZ>> pw(poly.nvars);
  for (int i = 0; i < poly.nvars; ++i) pw[i].push_back(a.one());
  RowZ acc = a.zero();
  for (auto& [e, c] : poly.terms) {
    RowZ term = a.one();
    bool first = true;
    for (int i = 0; i < poly.nvars; ++i) {
      if (e[i] == 0) continue;
      auto& powers = pw[i];
      while (static_cast<int>(powers.size()) <= e[i])
        powers.push_back(a.mul(powers.back(), inputs[i]));
      term = first ? powers[e[i]] : a.mul(term, powers[e[i]]);
      first = false;
    }
    acc = a.add(acc, reduce(c * term, a.base_mod()));
  }
  return acc;
}

}  // namespace wittlift
