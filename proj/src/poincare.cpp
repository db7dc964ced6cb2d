#include "grpd/poincare.hpp"

#include <algorithm>

#include "grpd/errors.hpp"

namespace grpd {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& token) {
  auto slash = token.find('/');
  try {
    if (slash == std::string::npos) {
      Rat r(mpz_class(token), 1);
      r.canonicalize();
      return r;
    }
    mpz_class num(token.substr(0, slash));
    mpz_class den(token.substr(slash + 1));
    if (den == 0) throw ParseError("rational token with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational token '" + token + "'");
  }
}

std::string rat_str(const Rat& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Rat& c) {
  return Polynomial(std::vector<Rat>{c});
}
Polynomial Polynomial::one() { return constant(1); }
Polynomial Polynomial::one_minus_t() {
  return Polynomial(std::vector<Rat>{Rat(1), Rat(-1)});
}

Rat Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rat(0);
  return coeffs_[i];
}

Rat Polynomial::operator()(const Rat& t) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  std::vector<Rat> c(coeffs_);
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rat> c(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Rat& c) const {
  std::vector<Rat> out(coeffs_);
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a,
                                                     const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rat> rem(a.coeffs_);
  const int db = b.degree();
  const Rat lead = b.coeffs_.back();
  if (static_cast<int>(rem.size()) - 1 < db)
    return {Polynomial(), Polynomial(std::move(rem))};
  std::vector<Rat> quo(rem.size() - db, Rat(0));
  for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
    if (rem[i] == 0) continue;
    Rat q = rem[i] / lead;
    quo[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs_[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rat(1) / a.coeffs().back());  // monic
}

// ---------------------------------------------------------------------------
// RationalFunction
// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw PreconditionError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::one();
    return;
  }
  Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Polynomial::divmod(num_, g).first;
    den_ = Polynomial::divmod(den_, g).first;
  }
  Rat lead = den_.coeffs().back();
  if (lead != 1) {
    den_ = den_.scaled(Rat(1) / lead);
    num_ = num_.scaled(Rat(1) / lead);
  }
}

RationalFunction RationalFunction::constant(const Rat& c) {
  return RationalFunction(Polynomial::constant(c), Polynomial::one());
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_);
}
RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + (-o);
}
RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}
RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw PreconditionError("rational function division by zero");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

// ---------------------------------------------------------------------------
// Series expansion and evaluation at t = 1
// ---------------------------------------------------------------------------

std::vector<Rat> series_coefficients(const RationalFunction& h, int n) {
  if (n < 0) throw PreconditionError("series length must be non-negative");
  const Polynomial& den = h.den();
  if (den.coeff(0) == 0)
    throw PreconditionError("series expansion requires den(0) != 0");
  const Polynomial& num = h.num();
  const Rat d0 = den.coeff(0);
  std::vector<Rat> a(n + 1, Rat(0));
  for (int i = 0; i <= n; ++i) {
    Rat acc = num.coeff(i);
    int reach = std::min(i, den.degree());
    for (int k = 1; k <= reach; ++k) acc -= den.coeff(k) * a[i - k];
    a[i] = acc / d0;
  }
  // Re-multiplication check: den · (truncated series) must match num up to
  // degree n.
  for (int i = 0; i <= n; ++i) {
    Rat acc(0);
    int reach = std::min(i, den.degree());
    for (int k = 0; k <= reach; ++k) acc += den.coeff(k) * a[i - k];
    if (acc != num.coeff(i))
      throw std::logic_error("series re-multiplication check failed");
  }
  return a;
}

namespace {

// Multiplicity of the root t = 1, removing (1 - t) factors by synthetic
// division with an exact remainder test.
int strip_one_minus_t(Polynomial* p) {
  int count = 0;
  while (!p->is_zero() && (*p)(Rat(1)) == 0) {
    auto [q, r] = Polynomial::divmod(*p, Polynomial::one_minus_t());
    if (!r.is_zero()) throw std::logic_error("exact division left a remainder");
    *p = std::move(q);
    ++count;
  }
  return count;
}

}  // namespace

int pole_order_at_one(const RationalFunction& h) {
  if (h.is_zero()) return 0;
  Polynomial num = h.num(), den = h.den();
  int r = strip_one_minus_t(&num);
  int s = strip_one_minus_t(&den);
  return std::max(0, s - r);
}

Rat evaluate_at_one(const RationalFunction& h) {
  if (h.is_zero()) return Rat(0);
  Polynomial num = h.num(), den = h.den();
  int r = strip_one_minus_t(&num);
  int s = strip_one_minus_t(&den);
  if (s > r) throw PoleError(s - r);
  // Residual (1 - t) factors in the numerator evaluate to zero.
  if (r > s) return Rat(0);
  return num(Rat(1)) / den(Rat(1));
}

Rat partial_sum_ratio(const RationalFunction& f, const RationalFunction& g,
                      int n) {
  std::vector<Rat> a = series_coefficients(f, n);
  std::vector<Rat> b = series_coefficients(g, n);
  Rat num(0), den(0);
  for (const Rat& x : a) num += x;
  for (int i = 0; i <= n; ++i) {
    den += b[i];
    if (den == 0)
      throw ZeroPartialSumError("denominator partial sum is zero at n = " +
                                std::to_string(i));
  }
  return num / den;
}

}  // namespace grpd
