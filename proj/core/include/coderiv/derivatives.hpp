#pragma once

#include "coderiv/types.hpp"

namespace coderiv {

// Matrix layout follows the row-vector convention used throughout this
// library: a Frechet derivative is stored as the n x m matrix whose entry
// (j, i) is d map_i / d x_j, so that map(u) ~ map(z) + (u - z) * jacobian.
// The coderivative matrix is its transpose (the ordinary Jacobian), and the
// coderivative of a smooth map acts on y by x = y * coderivative_matrix,
// i.e. x = jacobian * y in column form. `apply_coderivative` implements
// exactly that action.

enum class CoderivKind { kUnique, kSingletonTheta, kEmpty };

std::string_view to_string(CoderivKind kind);

/// Value of a coderivative query: one vector, the singleton {0}, or the empty set.
template <int N>
class CoderivResult {
 public:
  using Kind = CoderivKind;

  static CoderivResult unique(const Vec<N>& x) { return CoderivResult(Kind::kUnique, x); }
  static CoderivResult singleton_theta() { return CoderivResult(Kind::kSingletonTheta, Vec<N>::Zero()); }
  static CoderivResult empty() { return CoderivResult(Kind::kEmpty, Vec<N>::Zero()); }

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::kEmpty; }
  /// The unique element; zero for the singleton {0}. Meaningless when empty.
  const Vec<N>& value() const { return value_; }

 private:
  CoderivResult(Kind kind, const Vec<N>& value) : kind_(kind), value_(value) {}

  Kind kind_;
  Vec<N> value_;
};

template <int N>
Vec<N> apply_coderivative(const Mat<N>& coderivative_matrix, const Vec<N>& y) {
  return coderivative_matrix.transpose() * y;
}

// --- f on R^2 ---------------------------------------------------------------

/// Throws DomainError at the origin (f has no Frechet derivative there).
Mat2 jacobian_f(const Point2& z);
Mat2 coderivative_matrix_f(const Point2& z);
/// Full case analysis, including the origin: empty for y != 0, {0} for y = 0.
CoderivResult<2> coderivative_f(const Point2& z, const Point2& y);

/// |y|^2 + 12 (y1 z1 z2/|z|^2 - y2 (z1^2 - z2^2)/(2|z|^2))^2, which equals
/// |D^*f(z)(y)|^2.
double norm_identity_rhs_f(const Point2& z, const Point2& y);

// --- g on R^4 ---------------------------------------------------------------

/// Block diagonal; throws DomainError when either block of z is zero.
Mat4 jacobian_g(const Point4& z);
Mat4 coderivative_matrix_g(const Point4& z);

/// Nondegenerate z: the transpose-Jacobian action. One zero block: the
/// surviving block's action when y vanishes over the zero block, empty
/// otherwise. z = 0: {0} for y = 0, empty otherwise.
CoderivResult<4> coderivative_g(const Point4& z, const Point4& y);

/// Blockwise norm identity. A zero z-block contributes nothing and requires
/// the matching y-block to be zero; z = 0 is rejected.
double norm_identity_rhs_g(const Point4& z, const Point4& y);

// --- h on R^4 ---------------------------------------------------------------

/// Dense derivative with common denominator |z|^3; throws at the origin.
Mat4 jacobian_h(const Point4& z);
Mat4 coderivative_matrix_h(const Point4& z);

// --- dimension-erased helpers -----------------------------------------------

/// Analytic jacobian of any map in the row-vector layout above. Same errors as the typed versions.
MatX jacobian(MapId map, const VecX& z);

/// True when the analytic jacobian exists at z.
bool is_differentiable(MapId map, const VecX& z);

}  // namespace coderiv
