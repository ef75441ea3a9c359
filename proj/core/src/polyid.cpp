#include "coderiv/polyid.hpp"

#include "coderiv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coderiv::poly {

std::string_view var_name(Var v) {
  static constexpr std::array<std::string_view, kVarCount> names{"y1", "y2", "y3", "y4",
                                                                  "z1", "z2", "z3", "z4"};
  return names[static_cast<int>(v)];
}

Monomial Monomial::of(Var v, int exponent) {
  if (exponent < 0 || exponent > kMaxExponent) throw OverflowGuard("exponent out of range");
  Monomial m;
  m.exponents[static_cast<int>(v)] = static_cast<std::uint8_t>(exponent);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto e : exponents) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (int i = 0; i < kVarCount; ++i) {
    const int e = exponents[i] + other.exponents[i];
    if (e > kMaxExponent) throw OverflowGuard("exponent bound exceeded");
    out.exponents[i] = static_cast<std::uint8_t>(e);
  }
  return out;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

Poly Poly::constant(const Integer& c) { return term(c, Monomial{}); }

Poly Poly::var(Var v, int exponent) { return term(1, Monomial::of(v, exponent)); }

Poly Poly::term(const Integer& c, const Monomial& m) {
  Poly p;
  p.add_term(m, c);
  return p;
}

Integer Poly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  return out += o;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  return out -= o;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly operator*(const Integer& c, const Poly& p) { return p.scale(c); }

Poly Poly::scale(const Integer& c) const {
  if (c == 0) return {};
  Poly out = *this;
  for (auto& [m, coeff] : out.terms_) coeff *= c;
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  const int idx = static_cast<int>(v);
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const int e = rest.exponents[idx];
    rest.exponents[idx] = 0;
    out += term(c, rest) * value.pow(static_cast<unsigned>(e));
  }
  return out;
}

double Poly::evaluate(const std::array<double, kVarCount>& at) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.convert_to<double>();
    for (int i = 0; i < kVarCount; ++i) {
      if (m.exponents[i] != 0) t *= std::pow(at[i], m.exponents[i]);
    }
    sum += t;
  }
  return sum;
}

std::string Poly::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << c;
    for (int i = 0; i < kVarCount; ++i) {
      os << '*' << var_name(static_cast<Var>(i)) << '^' << static_cast<int>(m.exponents[i]);
    }
    os << '\n';
  }
  return os.str();
}

namespace {

struct BlockVars {
  Var y1, y2, z1, z2;
};

constexpr BlockVars kFirst{Var::y1, Var::y2, Var::z1, Var::z2};
constexpr BlockVars kSecond{Var::y3, Var::y4, Var::z3, Var::z4};

Poly v(Var x, int e = 1) { return Poly::var(x, e); }

struct BlockParts {
  Poly x1, x2, r, correction, y_norm2;
};

BlockParts block_parts(const BlockVars& b, const BlockCoefficients& c) {
  BlockParts p;
  p.x1 = Integer(c.a1) * (v(b.y1) * v(b.z1, 3)) + Integer(c.a2) * (v(b.y1) * v(b.z1) * v(b.z2, 2)) +
         Integer(c.a3) * (v(b.y2) * v(b.z2, 3));
  p.x2 = Integer(c.b1) * (v(b.y1) * v(b.z1, 2) * v(b.z2)) + Integer(c.b2) * (v(b.y1) * v(b.z2, 3)) +
         Integer(c.b3) * (v(b.y2) * v(b.z1, 3));
  p.r = v(b.z1, 2) + v(b.z2, 2);
  p.correction = Integer(2) * (v(b.y1) * v(b.z1) * v(b.z2)) - v(b.y2) * (v(b.z1, 2) - v(b.z2, 2));
  p.y_norm2 = v(b.y1, 2) + v(b.y2, 2);
  return p;
}

}  // namespace

IdentitySides f_norm_sides(const BlockCoefficients& c) {
  const BlockParts p = block_parts(kFirst, c);
  IdentitySides s;
  s.lhs = p.x1.pow(2) + p.x2.pow(2);
  s.rhs = p.y_norm2 * p.r.pow(3) + Integer(3) * p.r * p.correction.pow(2);
  return s;
}

bool verify_f_norm_identity(const BlockCoefficients& c) { return f_norm_sides(c).holds(); }

IdentitySides g_norm_sides(const BlockCoefficients& first, const BlockCoefficients& second) {
  const BlockParts a = block_parts(kFirst, first);
  const BlockParts b = block_parts(kSecond, second);
  const Poly ra3 = a.r.pow(3);
  const Poly rb3 = b.r.pow(3);
  IdentitySides s;
  s.lhs = (a.x1.pow(2) + a.x2.pow(2)) * rb3 + (b.x1.pow(2) + b.x2.pow(2)) * ra3;
  s.rhs = (a.y_norm2 + b.y_norm2) * ra3 * rb3 + Integer(3) * a.r * a.correction.pow(2) * rb3 +
          Integer(3) * b.r * b.correction.pow(2) * ra3;
  return s;
}

bool verify_g_norm_identity(const BlockCoefficients& first, const BlockCoefficients& second) {
  return g_norm_sides(first, second).holds();
}

IdentitySides h_norm_sides(long c1, long c2) {
  const Poly q1 = v(Var::z1, 2) + v(Var::z2, 2);
  const Poly q2 = v(Var::z3, 2) + v(Var::z4, 2);
  IdentitySides s;
  s.lhs = (v(Var::z1, 2) - v(Var::z2, 2)).pow(2) + (Integer(c1) * (v(Var::z1) * v(Var::z2))).pow(2) +
          (v(Var::z3, 2) - v(Var::z4, 2)).pow(2) + (Integer(c2) * (v(Var::z3) * v(Var::z4))).pow(2);
  s.rhs = q1.pow(2) + q2.pow(2);
  return s;
}

bool verify_h_norm_identity(long c1, long c2) { return h_norm_sides(c1, c2).holds(); }

double numeric_discrepancy(const IdentitySides& sides, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::array<double, kVarCount> at{};
    for (double& x : at) x = rng.uniform(-2.0, 2.0);
    const double l = sides.lhs.evaluate(at);
    const double r = sides.rhs.evaluate(at);
    const double scale = std::max({std::abs(l), std::abs(r), 1e-300});
    worst = std::max(worst, std::abs(l - r) / scale);
  }
  return worst;
}

}  // namespace coderiv::poly
