#include "acdedmd/dictionary.hpp"

#include <cmath>

#include "acdedmd/errors.hpp"

namespace acd {

double hermite(int order, double x, int max_order) {
  if (order < 0) {
    throw ValidationError("hermite: order must be non-negative");
  }
  if (order > max_order) {
    throw ValidationError("hermite: order " + std::to_string(order) +
                          " exceeds maximum " + std::to_string(max_order));
  }
  if (order == 0) return 1.0;
  double prev = 1.0;  // He_0
  double cur = x;     // He_1
  for (int n = 1; n < order; ++n) {
    const double next = x * cur - static_cast<double>(n) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::pair<double, double> hermite_pair(double x) { return {1.0, x}; }

Dictionary::Dictionary(Kind kind, std::optional<TopologySpace> space,
                       int raw_dim, int embedded_dim, int order)
    : kind_(kind),
      space_(std::move(space)),
      raw_dim_(raw_dim),
      embedded_dim_(embedded_dim),
      order_(order) {
  if (kind_ == Kind::kAcdKronecker) {
    if (embedded_dim_ > 30) {
      throw ValidationError("dictionary: 2^" + std::to_string(embedded_dim_) +
                            " Kronecker entries is not representable");
    }
    size_ = 1 << embedded_dim_;
  } else {
    if (order_ < 1) throw ValidationError("dictionary: direct-sum order must be >= 1");
    size_ = 1 + order_ * embedded_dim_;
  }
}

Dictionary Dictionary::acd_state(TopologySpace space) {
  const int raw = space.raw_dim();
  const int emb = space.embedded_dim();
  return Dictionary(Kind::kAcdKronecker, std::move(space), raw, emb, 1);
}

Dictionary Dictionary::acd_input(int input_dim) {
  if (input_dim < 0) throw ValidationError("dictionary: input_dim must be >= 0");
  return Dictionary(Kind::kAcdKronecker, std::nullopt, input_dim, input_dim, 1);
}

Dictionary Dictionary::direct_sum_state(TopologySpace space, int order) {
  const int raw = space.raw_dim();
  const int emb = space.embedded_dim();
  return Dictionary(Kind::kHermiteDirectSum, std::move(space), raw, emb, order);
}

Dictionary Dictionary::direct_sum_input(int input_dim, int order) {
  if (input_dim < 0) throw ValidationError("dictionary: input_dim must be >= 0");
  return Dictionary(Kind::kHermiteDirectSum, std::nullopt, input_dim, input_dim,
                    order);
}

int Dictionary::coordinate_entry(int k) const {
  if (k < 0 || k >= embedded_dim_) {
    throw ValidationError("dictionary: embedded variable index out of range");
  }
  if (kind_ == Kind::kAcdKronecker) {
    return 1 << (embedded_dim_ - 1 - k);
  }
  return 1 + order_ * k;
}

std::vector<std::string> Dictionary::labels(
    const std::vector<std::string>& raw_names) const {
  std::vector<std::string> vars;
  if (space_.has_value()) {
    vars = space_->embedded_names(raw_names);
  } else {
    for (int k = 0; k < embedded_dim_; ++k) {
      if (k < static_cast<int>(raw_names.size())) {
        vars.push_back(raw_names[k]);
      } else {
        vars.push_back("u" + std::to_string(k));
      }
    }
  }

  std::vector<std::string> out;
  out.reserve(size_);
  if (kind_ == Kind::kAcdKronecker) {
    for (int i = 0; i < size_; ++i) {
      std::string label;
      for (int k = 0; k < embedded_dim_; ++k) {
        if (i & (1 << (embedded_dim_ - 1 - k))) {
          if (!label.empty()) label += "*";
          label += vars[k];
        }
      }
      out.push_back(label.empty() ? "1" : label);
    }
  } else {
    out.push_back("1");
    for (int k = 0; k < embedded_dim_; ++k) {
      for (int p = 1; p <= order_; ++p) {
        out.push_back("He" + std::to_string(p) + "(" + vars[k] + ")");
      }
    }
  }
  return out;
}

Eigen::VectorXd Dictionary::evaluate(const Eigen::VectorXd& point) const {
  if (point.size() != raw_dim_) {
    throw ValidationError("dictionary: point has length " +
                          std::to_string(point.size()) + ", expected " +
                          std::to_string(raw_dim_));
  }
  if (space_.has_value()) {
    return evaluate_embedded(embed(*space_, point));
  }
  return evaluate_embedded(point);
}

Eigen::VectorXd Dictionary::evaluate_embedded(
    const Eigen::VectorXd& embedded) const {
  if (embedded.size() != embedded_dim_) {
    throw ValidationError("dictionary: embedded point has length " +
                          std::to_string(embedded.size()) + ", expected " +
                          std::to_string(embedded_dim_));
  }
  Eigen::VectorXd out(size_);
  if (kind_ == Kind::kAcdKronecker) {
    // Left-fold kron over [1, e_k]; after step k the first 2^k entries hold
    // all products of the coordinates seen so far.
    out[0] = 1.0;
    int width = 1;
    for (int k = 0; k < embedded_dim_; ++k) {
      const double v = embedded[k];
      for (int i = width - 1; i >= 0; --i) {
        out[2 * i] = out[i];
        out[2 * i + 1] = out[i] * v;
      }
      width *= 2;
    }
  } else {
    out[0] = 1.0;
    int idx = 1;
    for (int k = 0; k < embedded_dim_; ++k) {
      for (int p = 1; p <= order_; ++p) {
        out[idx++] = hermite(p, embedded[k], order_);
      }
    }
  }
  return out;
}

bool Dictionary::operator==(const Dictionary& other) const {
  return kind_ == other.kind_ && space_ == other.space_ &&
         raw_dim_ == other.raw_dim_ && order_ == other.order_;
}

int combined_size(const Dictionary& state_dict, const Dictionary& input_dict) {
  if (state_dict.kind() != input_dict.kind()) {
    throw ValidationError("combined lift: state and input dictionaries must be "
                          "of the same kind");
  }
  if (state_dict.kind() == Dictionary::Kind::kAcdKronecker) {
    return state_dict.size() * input_dict.size();
  }
  return state_dict.size() + (input_dict.size() - 1);
}

Eigen::VectorXd evaluate_combined(const Dictionary& state_dict,
                                  const Dictionary& input_dict,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& u) {
  const int total = combined_size(state_dict, input_dict);
  const Eigen::VectorXd xs = state_dict.evaluate(x);
  const Eigen::VectorXd us = input_dict.evaluate(u);
  Eigen::VectorXd out(total);
  if (state_dict.kind() == Dictionary::Kind::kAcdKronecker) {
    for (int i = 0; i < xs.size(); ++i) {
      out.segment(i * us.size(), us.size()) = xs[i] * us;
    }
  } else {
    out.head(xs.size()) = xs;
    out.tail(us.size() - 1) = us.tail(us.size() - 1);
  }
  return out;
}

std::vector<int> state_block_indices(const Dictionary& state_dict,
                                     const Dictionary& input_dict) {
  std::vector<int> idx(state_dict.size());
  if (state_dict.kind() == Dictionary::Kind::kAcdKronecker) {
    const int nu = input_dict.size();
    for (int i = 0; i < state_dict.size(); ++i) idx[i] = i * nu;
  } else {
    for (int i = 0; i < state_dict.size(); ++i) idx[i] = i;
  }
  return idx;
}

}  // namespace acd
