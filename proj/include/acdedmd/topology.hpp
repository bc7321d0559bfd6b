#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace acd {

/// One factor of a configuration-space (or workspace) product: R^n or S^1.
struct TopologyAtom {
  enum class Kind { kEuclidean, kCircle };
  Kind kind = Kind::kEuclidean;
  int dim = 1;  // coordinate count; a circle contributes exactly one raw angle

  bool operator==(const TopologyAtom&) const = default;
};

/// Ordered Cartesian product of Euclidean and circle factors. Factor order
/// matches the coordinate order of the raw state vector it is bound to.
///
/// Raw coordinates pass through the embedding unchanged except for circle
/// angles, which map to their (sin, cos) pair, so a space with c circles has
/// embedded dimension raw_dim() + c.
class TopologySpace {
 public:
  explicit TopologySpace(std::vector<TopologyAtom> atoms);

  const std::vector<TopologyAtom>& atoms() const { return atoms_; }
  int raw_dim() const { return raw_dim_; }
  int embedded_dim() const { return embedded_dim_; }
  int circle_count() const { return circle_count_; }

  /// True if raw coordinate `raw_index` is a circle angle.
  bool is_angle(int raw_index) const;

  /// Canonical text form, e.g. "R^2 x S^1".
  std::string expression() const;

  /// Names of the embedded coordinates given raw coordinate names
  /// (angle q -> "sin(q)", "cos(q)"). `raw_names` may be empty, in which
  /// case q0, q1, ... are used.
  std::vector<std::string> embedded_names(
      const std::vector<std::string>& raw_names = {}) const;

  bool operator==(const TopologySpace& other) const {
    return atoms_ == other.atoms_;
  }

 private:
  std::vector<TopologyAtom> atoms_;
  int raw_dim_ = 0;
  int embedded_dim_ = 0;
  int circle_count_ = 0;
};

/// Parses a topology expression with grammar
///   space := atom ('x' atom)*
///   atom  := 'R^'<int> | 'E^'<int> | 'S^1'
/// ('E' aliases 'R'; whitespace between tokens is ignored.)
/// Throws ValidationError with the offending position on syntax errors and on
/// unsupported atoms such as S^2.
TopologySpace parse_topology(const std::string& text);

/// Maps a raw state onto the embedded Euclidean variables: Euclidean
/// coordinates pass through, each angle theta becomes (sin theta, cos theta).
Eigen::VectorXd embed(const TopologySpace& space, const Eigen::VectorXd& raw);

/// Inverse of embed. Each (s, c) pair maps to atan2(s, c) in (-pi, pi]; pairs
/// need not be unit norm. Throws NumericalError for a (0, 0) pair.
Eigen::VectorXd unembed(const TopologySpace& space,
                        const Eigen::VectorXd& embedded);

}  // namespace acd
