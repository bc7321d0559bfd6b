#include "acdedmd/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "acdedmd/errors.hpp"

namespace acd {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end && std::isfinite(out);
}

}  // namespace

int TrajectoryDataset::state_dim() const {
  if (!state_names.empty()) return static_cast<int>(state_names.size());
  return trajectories.empty() ? 0
                              : static_cast<int>(trajectories[0].states.cols());
}

int TrajectoryDataset::input_dim() const {
  if (!input_names.empty()) return static_cast<int>(input_names.size());
  return trajectories.empty() ? 0
                              : static_cast<int>(trajectories[0].inputs.cols());
}

int TrajectoryDataset::pair_count() const {
  int total = 0;
  for (const auto& traj : trajectories) {
    total += static_cast<int>(traj.states.rows()) - 1;
  }
  return total;
}

void TrajectoryDataset::validate() const {
  if (trajectories.empty()) {
    throw ValidationError("dataset: no trajectories");
  }
  const Eigen::Index ds = trajectories[0].states.cols();
  const Eigen::Index du = trajectories[0].inputs.cols();
  if (!state_names.empty() && static_cast<Eigen::Index>(state_names.size()) != ds) {
    throw ValidationError("dataset: state_names size does not match state columns");
  }
  if (!input_names.empty() && static_cast<Eigen::Index>(input_names.size()) != du) {
    throw ValidationError("dataset: input_names size does not match input columns");
  }
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& traj = trajectories[i];
    const std::string tag = "dataset: trajectory " + std::to_string(i);
    if (!(traj.period > 0.0)) throw ValidationError(tag + " has non-positive period");
    if (traj.states.rows() < 2) throw ValidationError(tag + " needs >= 2 samples");
    if (traj.states.cols() != ds || traj.inputs.cols() != du) {
      throw ValidationError(tag + " has inconsistent column counts");
    }
    if (traj.inputs.rows() != traj.states.rows() - 1) {
      throw ValidationError(tag + " must have exactly one fewer input row than states");
    }
    if (!traj.states.allFinite() || !traj.inputs.allFinite()) {
      throw ValidationError(tag + " has non-finite entries");
    }
  }
}

TrajectoryDataset ingest_csv(const std::string& path, const CsvSchema& schema,
                             double period) {
  if (!(period > 0.0)) {
    throw ValidationError("ingest_csv: sampling period must be positive");
  }
  std::ifstream file(path);
  if (!file) throw IoError("ingest_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(file, line)) {
    throw ValidationError("ingest_csv: '" + path + "' is empty (no header row)");
  }
  const std::vector<std::string> header = split_line(line);

  // Resolve column roles.
  std::vector<int> state_cols;
  std::vector<int> input_cols;
  int traj_col = -1;
  auto find_col = [&header](const std::string& name) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == name) return static_cast<int>(j);
    }
    return -1;
  };
  if (schema.state_columns.empty() && schema.input_columns.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == schema.traj_id_column) {
        traj_col = static_cast<int>(j);
      } else if (header[j].rfind("u_", 0) == 0) {
        input_cols.push_back(static_cast<int>(j));
      } else {
        state_cols.push_back(static_cast<int>(j));
      }
    }
  } else {
    for (const auto& name : schema.state_columns) {
      const int j = find_col(name);
      if (j < 0) throw ValidationError("ingest_csv: missing state column '" + name + "'");
      state_cols.push_back(j);
    }
    for (const auto& name : schema.input_columns) {
      const int j = find_col(name);
      if (j < 0) throw ValidationError("ingest_csv: missing input column '" + name + "'");
      input_cols.push_back(j);
    }
    traj_col = find_col(schema.traj_id_column);
  }
  if (state_cols.empty()) {
    throw ValidationError("ingest_csv: no state columns in '" + path + "'");
  }

  TrajectoryDataset dataset;
  dataset.source = path;
  for (int j : state_cols) dataset.state_names.push_back(header[j]);
  for (int j : input_cols) dataset.input_names.push_back(header[j]);

  // Collect rows grouped by contiguous trajectory id.
  struct Row {
    std::vector<double> state;
    std::vector<double> input;
    bool input_empty = false;
  };
  std::vector<std::vector<Row>> groups;
  std::set<std::string> finished_ids;
  std::string current_id;
  bool any_rows = false;
  int line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ValidationError("ingest_csv: row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    }
    const std::string id = traj_col >= 0 ? cells[traj_col] : "";
    if (!any_rows || id != current_id) {
      if (finished_ids.count(id)) {
        throw ValidationError("ingest_csv: trajectory '" + id +
                              "' is split across non-contiguous rows (row " +
                              std::to_string(line_no) + ")");
      }
      if (any_rows) finished_ids.insert(current_id);
      current_id = id;
      groups.emplace_back();
      any_rows = true;
    }
    Row row;
    for (int j : state_cols) {
      double v;
      if (!parse_double(cells[j], v)) {
        throw ValidationError("ingest_csv: non-numeric cell at row " +
                              std::to_string(line_no) + ", column '" + header[j] + "'");
      }
      row.state.push_back(v);
    }
    int empty_inputs = 0;
    for (int j : input_cols) {
      if (cells[j].empty()) {
        ++empty_inputs;
        row.input.push_back(0.0);
        continue;
      }
      double v;
      if (!parse_double(cells[j], v)) {
        throw ValidationError("ingest_csv: non-numeric cell at row " +
                              std::to_string(line_no) + ", column '" + header[j] + "'");
      }
      row.input.push_back(v);
    }
    if (empty_inputs != 0 && empty_inputs != static_cast<int>(input_cols.size())) {
      throw ValidationError("ingest_csv: row " + std::to_string(line_no) +
                            " has a mix of empty and filled input cells");
    }
    row.input_empty = !input_cols.empty() && empty_inputs > 0;
    groups.back().push_back(std::move(row));
  }
  if (groups.empty()) {
    throw ValidationError("ingest_csv: '" + path + "' has no data rows");
  }

  for (const auto& rows : groups) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) {
      throw ValidationError("ingest_csv: trajectory needs >= 2 samples in '" + path + "'");
    }
    for (int t = 0; t < n; ++t) {
      if (rows[t].input_empty && t != n - 1) {
        throw ValidationError(
            "ingest_csv: empty input cells are only allowed on the final row "
            "of a trajectory");
      }
    }
    Trajectory traj;
    traj.period = period;
    traj.states.resize(n, static_cast<Eigen::Index>(state_cols.size()));
    traj.inputs.resize(n - 1, static_cast<Eigen::Index>(input_cols.size()));
    for (int t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < state_cols.size(); ++j) {
        traj.states(t, static_cast<Eigen::Index>(j)) = rows[t].state[j];
      }
      // When every row carries inputs, the final row's command has no
      // following state and is dropped.
      if (t < n - 1) {
        for (std::size_t j = 0; j < input_cols.size(); ++j) {
          traj.inputs(t, static_cast<Eigen::Index>(j)) = rows[t].input[j];
        }
      }
    }
    dataset.trajectories.push_back(std::move(traj));
  }
  dataset.validate();
  return dataset;
}

TrajectoryDataset ingest_csv(const std::string& path, double period) {
  return ingest_csv(path, CsvSchema{}, period);
}

void write_csv(const TrajectoryDataset& dataset, const std::string& path) {
  dataset.validate();
  std::ofstream file(path);
  if (!file) throw IoError("write_csv: cannot open '" + path + "' for writing");

  file << "traj_id";
  for (const auto& name : dataset.state_names) file << "," << name;
  for (const auto& name : dataset.input_names) {
    file << "," << (name.rfind("u_", 0) == 0 ? name : "u_" + name);
  }
  file << "\n";

  for (std::size_t i = 0; i < dataset.trajectories.size(); ++i) {
    const auto& traj = dataset.trajectories[i];
    for (Eigen::Index t = 0; t < traj.states.rows(); ++t) {
      file << i;
      for (Eigen::Index j = 0; j < traj.states.cols(); ++j) {
        file << "," << format_double(traj.states(t, j));
      }
      for (Eigen::Index j = 0; j < traj.inputs.cols(); ++j) {
        file << ",";
        if (t < traj.inputs.rows()) file << format_double(traj.inputs(t, j));
      }
      file << "\n";
    }
  }
  if (!file) throw IoError("write_csv: failed writing '" + path + "'");
}

TrajectoryDataset moving_average(const TrajectoryDataset& dataset, int window) {
  dataset.validate();
  if (window < 1 || window % 2 == 0) {
    throw ValidationError("moving_average: window must be odd and >= 1");
  }
  for (const auto& traj : dataset.trajectories) {
    if (static_cast<Eigen::Index>(window) > traj.states.rows()) {
      throw ValidationError(
          "moving_average: window exceeds the shortest trajectory length");
    }
  }

  TrajectoryDataset out = dataset;
  const int half = (window - 1) / 2;
  for (auto& traj : out.trajectories) {
    const Eigen::MatrixXd original = traj.states;
    const int n = static_cast<int>(original.rows());
    for (int t = 0; t < n; ++t) {
      const int radius = std::min({half, t, n - 1 - t});
      traj.states.row(t) =
          original.middleRows(t - radius, 2 * radius + 1).colwise().mean();
    }
  }
  return out;
}

std::pair<TrajectoryDataset, TrajectoryDataset> split_dataset(
    const TrajectoryDataset& dataset, int train_count) {
  const int n = static_cast<int>(dataset.trajectories.size());
  if (train_count < 0 || train_count > n) {
    throw ValidationError("split_dataset: train_count out of range");
  }
  TrajectoryDataset train = dataset;
  TrajectoryDataset validation = dataset;
  train.trajectories.assign(dataset.trajectories.begin(),
                            dataset.trajectories.begin() + train_count);
  validation.trajectories.assign(dataset.trajectories.begin() + train_count,
                                 dataset.trajectories.end());
  return {std::move(train), std::move(validation)};
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace acd
