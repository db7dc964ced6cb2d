#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace grpd {

// Exact rational scalar. mpq_class keeps the canonical form we rely on:
// gcd(|num|, den) = 1 and den >= 1.
using Rat = mpq_class;

Rat make_rat(long num, long den);
Rat parse_rat(const std::string& token);  // "p/q" or integer
std::string rat_str(const Rat& r);

// Dense polynomial over Rat in canonical form (no trailing zeros).
// degree() of the zero polynomial is the sentinel -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rat> coeffs);
  static Polynomial constant(const Rat& c);
  static Polynomial one();
  static Polynomial one_minus_t();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rat coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat operator()(const Rat& t) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  // Euclidean division; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b);
  static Polynomial gcd(Polynomial a, Polynomial b);  // monic
  Polynomial scaled(const Rat& c) const;

 private:
  std::vector<Rat> coeffs_;
};

// Ratio of polynomials in canonical form: gcd(num, den) = 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : RationalFunction(Polynomial(), Polynomial::one()) {}
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(const Rat& c);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;  // o != 0
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  Polynomial num_, den_;
};

// Exact power-series coefficients a_0..a_n of num/den via the linear
// recurrence den·Σ a_i t^i = num; requires den(0) != 0. The result is
// verified by re-multiplication before returning.
std::vector<Rat> series_coefficients(const RationalFunction& h, int n);

// Multiplicity of (1 - t) in the denominator net of the numerator; 0 means
// the evaluation at t = 1 is defined.
int pole_order_at_one(const RationalFunction& h);

// Cancels common (1 - t) factors by exact division and evaluates at t = 1;
// throws PoleError with the remaining order if a net pole survives.
Rat evaluate_at_one(const RationalFunction& h);

// C_n = (Σ_{i<=n} a_i) / (Σ_{i<=n} b_i) for the expansions of f and g.
Rat partial_sum_ratio(const RationalFunction& f, const RationalFunction& g,
                      int n);

}  // namespace grpd
