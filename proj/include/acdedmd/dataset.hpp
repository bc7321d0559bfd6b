#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace acd {

/// One recorded trajectory sampled at a fixed period. Input row m is the
/// command held over [t_m, t_{m+1}) (zero-order hold), so a trajectory of
/// L state samples carries L-1 input rows.
struct Trajectory {
  double period = 0.0;     ///< sampling period T in seconds
  Eigen::MatrixXd states;  ///< rows = time samples, cols = state dims
  Eigen::MatrixXd inputs;  ///< rows = states.rows() - 1, cols = input dims
};

/// A set of trajectories sharing state/input layout, plus provenance.
struct TrajectoryDataset {
  std::vector<Trajectory> trajectories;
  std::vector<std::string> state_names;
  std::vector<std::string> input_names;  ///< stored with their "u_" prefix
  std::string source;                    ///< free-form origin tag (path, sim name)
  std::uint64_t seed = 0;                ///< RNG seed when synthetic, else 0
  std::string topology;                  ///< topology expression, may be empty

  int state_dim() const;
  int input_dim() const;
  /// Total number of snapshot pairs available downstream: sum of (len - 1).
  int pair_count() const;
  /// Throws ValidationError if any structural invariant is broken.
  void validate() const;
};

/// Column roles for CSV ingestion. Empty role lists mean "infer from the
/// header": a column named `traj_id_column` splits trajectories, columns
/// prefixed "u_" are inputs, everything else is a state.
struct CsvSchema {
  std::vector<std::string> state_columns;
  std::vector<std::string> input_columns;
  std::string traj_id_column = "traj_id";
};

/// Parse a trajectory CSV (header row required). Rows belonging to one
/// trajectory must be contiguous. If every row carries input values the last
/// input row is dropped to restore the m -> m+1 pairing; alternatively the
/// final row of a trajectory may leave all input cells empty.
///
/// Throws IoError if the file cannot be read and ValidationError for schema
/// or cell-level problems (row and column are named in the message).
TrajectoryDataset ingest_csv(const std::string& path, const CsvSchema& schema,
                             double period);
TrajectoryDataset ingest_csv(const std::string& path, double period);

/// Write a dataset in the same schema ingest_csv reads. Numeric cells use
/// shortest round-trip decimals, so export -> ingest reproduces every value
/// bit for bit.
void write_csv(const TrajectoryDataset& dataset, const std::string& path);

/// Centered moving average applied per state column; inputs are untouched.
/// Edges use shrunken symmetric windows so trajectory length is preserved.
/// The window must be odd, >= 1 and no longer than the shortest trajectory.
TrajectoryDataset moving_average(const TrajectoryDataset& dataset, int window);

/// Split off the first `train_count` trajectories; the rest become the
/// validation set. Metadata is copied to both halves.
std::pair<TrajectoryDataset, TrajectoryDataset> split_dataset(
    const TrajectoryDataset& dataset, int train_count);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace acd
