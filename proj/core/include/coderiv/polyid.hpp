#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace coderiv::poly {

using Integer = boost::multiprecision::cpp_int;

/// The fixed variable set, in the order used for term ordering and dumps.
enum class Var : int { y1, y2, y3, y4, z1, z2, z3, z4 };

inline constexpr int kVarCount = 8;
inline constexpr int kMaxExponent = 64;

std::string_view var_name(Var v);

/// Raised when a product would push an exponent past kMaxExponent.
class OverflowGuard : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

struct Monomial {
  std::array<std::uint8_t, kVarCount> exponents{};

  static Monomial of(Var v, int exponent = 1);
  int degree() const;
  /// Sum of exponents; throws OverflowGuard past kMaxExponent.
  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order with y1 > y2 > ... > z4; descending, so the
/// leading term comes first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial with exact integer coefficients. Zero coefficients are
/// never stored, so the zero polynomial has no terms.
class Poly {
 public:
  using Terms = std::map<Monomial, Integer, GrlexDescending>;

  Poly() = default;
  static Poly constant(const Integer& c);
  static Poly var(Var v, int exponent = 1);
  static Poly term(const Integer& c, const Monomial& m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(const Monomial& m) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly&) const = default;

  Poly scale(const Integer& c) const;
  Poly pow(unsigned exponent) const;

  /// Replaces every occurrence of v by `value`.
  Poly substitute(Var v, const Poly& value) const;

  /// Floating evaluation at the given values of y1..z4.
  double evaluate(const std::array<double, kVarCount>& at) const;

  /// One term per line as coeff*y1^a*y2^b*y3^c*y4^d*z1^e*z2^f*z3^g*z4^h, in
  /// descending grlex order. The zero polynomial dumps as "0".
  std::string dump() const;

 private:
  void add_term(const Monomial& m, const Integer& c);

  Terms terms_;
};

Poly operator*(const Integer& c, const Poly& p);

/// Two sides of a polynomial identity.
struct IdentitySides {
  Poly lhs;
  Poly rhs;
  Poly difference() const { return lhs - rhs; }
  bool holds() const { return difference().is_zero(); }
};

/// Integer coefficients of the cleared coderivative components of f:
///   X1 = a1 y1 z1^3 + a2 y1 z1 z2^2 + a3 y2 z2^3
///   X2 = b1 y1 z1^2 z2 + b2 y1 z2^3 + b3 y2 z1^3
/// Defaults are the true values; changing one yields a mutated identity.
struct BlockCoefficients {
  long a1 = 1, a2 = 3, a3 = 2;
  long b1 = -3, b2 = -1, b3 = 2;
};

/// Cleared norm identity for f, R = z1^2 + z2^2:
///   X1^2 + X2^2 = (y1^2 + y2^2) R^3 + 3 R (2 y1 z1 z2 - y2 (z1^2 - z2^2))^2.
IdentitySides f_norm_sides(const BlockCoefficients& c = {});
bool verify_f_norm_identity(const BlockCoefficients& c = {});

/// Blockwise version for g over all eight variables, each block cleared by
/// its own R_b^3:
///   (X1^2 + X2^2) R2^3 + (X3^2 + X4^2) R1^3
///     = |y|^2 R1^3 R2^3 + 3 R1 C1^2 R2^3 + 3 R2 C2^2 R1^3.
IdentitySides g_norm_sides(const BlockCoefficients& first = {}, const BlockCoefficients& second = {});
bool verify_g_norm_identity(const BlockCoefficients& first = {}, const BlockCoefficients& second = {});

/// |h(x)|^2 |x|^2 = |x|^2 |x|^2 in the variables z1..z4:
///   (z1^2 - z2^2)^2 + (c1 z1 z2)^2 + (z3^2 - z4^2)^2 + (c2 z3 z4)^2
///     = (z1^2 + z2^2)^2 + (z3^2 + z4^2)^2, true for c1 = c2 = 2.
IdentitySides h_norm_sides(long c1 = 2, long c2 = 2);
bool verify_h_norm_identity(long c1 = 2, long c2 = 2);

/// Evaluates both sides at `trials` seeded random real points in [-2, 2]^8
/// and returns the largest relative discrepancy.
double numeric_discrepancy(const IdentitySides& sides, int trials, std::uint64_t seed);

}  // namespace coderiv::poly
