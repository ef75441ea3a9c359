#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coderiv {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int N>
using Mat = Eigen::Matrix<double, N, N>;

using Point2 = Vec<2>;
using Point4 = Vec<4>;
using Mat2 = Mat<2>;
using Mat4 = Mat<4>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// The three mappings under study: f on R^2, g and h on R^4.
enum class MapId { F2, G4, H4 };

int dimension(MapId map);
std::string_view to_string(MapId map);
/// Accepts "f", "g", "h" (and the enum spellings "F2", "G4", "H4").
MapId parse_map_id(std::string_view text);

/// A point where the requested derivative does not exist.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration (sample counts, schedules, scenarios).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Derived>
bool is_origin(const Eigen::MatrixBase<Derived>& v) {
  return (v.array() == 0.0).all();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

/// Throws ConfigError when a coordinate is NaN or infinite.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v, std::string_view what) {
  if (!v.allFinite()) {
    throw ConfigError(std::string(what) + ": coordinates must be finite");
  }
}

}  // namespace coderiv
