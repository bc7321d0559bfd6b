#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acdedmd/topology.hpp"

namespace acd {

/// Largest Hermite order accepted by default; the direct-sum baseline uses
/// orders 0..2 and the Kronecker dictionaries only 0..1.
inline constexpr int kDefaultMaxHermiteOrder = 2;

/// Probabilist's Hermite polynomial He_n(x), evaluated by the three-term
/// recurrence He_{n+1} = x He_n - n He_{n-1}. Throws ValidationError for
/// order < 0 or order > max_order.
double hermite(int order, double x, int max_order = kDefaultMaxHermiteOrder);

/// (He_0(x), He_1(x)) = (1, x).
std::pair<double, double> hermite_pair(double x);

/// An ordered set of lifting functions over a state space or an input space.
///
/// Two kinds are supported:
///  - kAcdKronecker: the left-fold Kronecker product of [He_0, He_1] = [1, v]
///    over the embedded coordinates, N = 2^d. Entry indices follow
///    kron(a, b)[i*len(b) + j] = a[i]*b[j], so with coordinates folded in
///    topology order, entry i is the product of the embedded variables whose
///    bit (d-1-k) is set in i. Entry 0 is the constant function.
///  - kHermiteDirectSum: a shared constant followed by He_1..He_order per
///    embedded variable, grouped by variable; N = 1 + order*d. No cross terms.
///
/// State dictionaries bind a TopologySpace and embed raw points before
/// evaluation; input dictionaries act on R^m directly.
class Dictionary {
 public:
  enum class Kind { kAcdKronecker, kHermiteDirectSum };

  /// Kronecker dictionary over the embedded coordinates of `space`.
  static Dictionary acd_state(TopologySpace space);

  /// Kronecker dictionary over an R^input_dim input (input_dim 0 -> [1]).
  static Dictionary acd_input(int input_dim);

  /// Direct-sum dictionary over the embedded coordinates of `space`.
  static Dictionary direct_sum_state(TopologySpace space, int order = 2);

  /// Direct-sum dictionary over an R^input_dim input.
  static Dictionary direct_sum_input(int input_dim, int order = 2);

  Kind kind() const { return kind_; }
  bool is_input() const { return !space_.has_value(); }
  const std::optional<TopologySpace>& space() const { return space_; }
  int order() const { return order_; }

  /// Number of lifting functions N.
  int size() const { return size_; }
  /// Expected length of points passed to evaluate().
  int raw_dim() const { return raw_dim_; }
  /// Number of embedded variables d the functions are built over.
  int embedded_dim() const { return embedded_dim_; }

  /// Index of the constant function (always 0).
  int constant_entry() const { return 0; }
  /// Index of the entry equal to embedded variable k alone.
  int coordinate_entry(int k) const;

  /// Human-readable names of the N functions, for diagnostics.
  std::vector<std::string> labels(
      const std::vector<std::string>& raw_names = {}) const;

  /// Lifts a raw point (state dictionaries embed it first). Throws
  /// ValidationError on a length mismatch. The result always has
  /// value 1 at constant_entry().
  Eigen::VectorXd evaluate(const Eigen::VectorXd& point) const;

  /// Lifts a point that is already in embedded coordinates.
  Eigen::VectorXd evaluate_embedded(const Eigen::VectorXd& embedded) const;

  bool operator==(const Dictionary& other) const;

 private:
  Dictionary(Kind kind, std::optional<TopologySpace> space, int raw_dim,
             int embedded_dim, int order);

  Kind kind_;
  std::optional<TopologySpace> space_;
  int raw_dim_ = 0;
  int embedded_dim_ = 0;
  int order_ = 1;
  int size_ = 0;
};

/// Size of the combined state-and-input lift.
int combined_size(const Dictionary& state_dict, const Dictionary& input_dict);

/// The complete lift used as the regressor: kron(D(x), D(u)) for Kronecker
/// dictionaries, a shared-constant union [1 | state terms | input terms] for
/// direct-sum dictionaries. Both dictionaries must be of the same kind.
Eigen::VectorXd evaluate_combined(const Dictionary& state_dict,
                                  const Dictionary& input_dict,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& u);

/// Indices of the combined-lift entries that pair state function i with the
/// constant input function, in state-function order i = 0..N_x-1. These rows
/// of a fitted operator form the autonomous state-to-state block.
std::vector<int> state_block_indices(const Dictionary& state_dict,
                                     const Dictionary& input_dict);

}  // namespace acd
