#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "acdedmd/edmd.hpp"
#include "acdedmd/errors.hpp"
#include "acdedmd/predict.hpp"
#include "acdedmd/systems.hpp"

using acd::Dictionary;
using acd::KoopmanModel;
using acd::parse_topology;
using acd::SnapshotPairs;
using acd::TrajectoryDataset;
using acd::ValidationError;

namespace {

// Dataset of the exact map x_{m+1} = a * x_m, no input.
TrajectoryDataset linear_map_dataset(double a) {
  TrajectoryDataset dataset;
  dataset.state_names = {"x"};
  for (const double x0 : {4.0, -3.0}) {
    acd::Trajectory traj;
    traj.period = 1.0;
    traj.states.resize(5, 1);
    traj.states(0, 0) = x0;
    for (int t = 1; t < 5; ++t) traj.states(t, 0) = a * traj.states(t - 1, 0);
    traj.inputs.resize(4, 0);
    dataset.trajectories.push_back(std::move(traj));
  }
  return dataset;
}

KoopmanModel fit_linear_map(double a) {
  const Dictionary state = Dictionary::acd_state(parse_topology("R^1"));
  const Dictionary input = Dictionary::acd_input(0);
  const TrajectoryDataset dataset = linear_map_dataset(a);
  return acd::fit(acd::assemble_snapshots(dataset, state, input), state, input,
                  1.0);
}

}  // namespace

TEST_CASE("snapshot pair counts and trajectory boundaries") {
  TrajectoryDataset dataset;
  dataset.state_names = {"x"};
  acd::Trajectory t1;
  t1.period = 0.5;
  t1.states.resize(3, 1);
  t1.states << 0.0, 1.0, 2.0;
  t1.inputs.resize(2, 0);
  acd::Trajectory t2;
  t2.period = 0.5;
  t2.states.resize(4, 1);
  t2.states << 10.0, 20.0, 30.0, 40.0;
  t2.inputs.resize(3, 0);
  dataset.trajectories = {t1, t2};

  const Dictionary state = Dictionary::acd_state(parse_topology("R^1"));
  const Dictionary input = Dictionary::acd_input(0);
  const SnapshotPairs pairs = acd::assemble_snapshots(dataset, state, input);
  CHECK(pairs.count() == 5);
  REQUIRE(pairs.pairs_per_trajectory == std::vector<int>{2, 3});
  // The pair after trajectory 1 ends starts from 10, never from 2.
  CHECK(pairs.regressors(2, 1) == 10.0);
  CHECK(pairs.targets(2, 1) == 20.0);
  CHECK(pairs.targets(1, 1) == 2.0);
}

TEST_CASE("a single two-sample trajectory yields one pair") {
  TrajectoryDataset dataset;
  dataset.state_names = {"x"};
  acd::Trajectory traj;
  traj.period = 1.0;
  traj.states.resize(2, 1);
  traj.states << 1.0, 2.0;
  traj.inputs.resize(1, 0);
  dataset.trajectories.push_back(traj);
  const Dictionary state = Dictionary::acd_state(parse_topology("R^1"));
  const SnapshotPairs pairs =
      acd::assemble_snapshots(dataset, state, Dictionary::acd_input(0));
  CHECK(pairs.count() == 1);
}

TEST_CASE("the training protocol sizes produce 50000 pairs") {
  TrajectoryDataset dataset;
  dataset.state_names = {"x"};
  for (int i = 0; i < 100; ++i) {
    acd::Trajectory traj;
    traj.period = 0.1;
    traj.states = Eigen::VectorXd::LinSpaced(501, 0.0, 1.0);
    traj.inputs.resize(500, 0);
    dataset.trajectories.push_back(std::move(traj));
  }
  CHECK(dataset.pair_count() == 50000);
}

TEST_CASE("fit recovers the exact operator of a linear map") {
  const KoopmanModel model = fit_linear_map(0.5);
  REQUIRE(model.K.rows() == 2);
  REQUIRE(model.K.cols() == 2);
  Eigen::Matrix2d expected;
  expected << 1.0, 0.0, 0.0, 0.5;
  CHECK((model.K - expected).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(model.residual < 1e-18);

  // Independent hand assembly of G and A over the same snapshots.
  const TrajectoryDataset dataset = linear_map_dataset(0.5);
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  int m_count = 0;
  for (const auto& traj : dataset.trajectories) {
    for (int t = 0; t + 1 < traj.states.rows(); ++t) {
      Eigen::Vector2d psi(1.0, traj.states(t, 0));
      Eigen::Vector2d phi(1.0, traj.states(t + 1, 0));
      g += psi * psi.transpose();
      a += psi * phi.transpose();
      ++m_count;
    }
  }
  g /= m_count;
  a /= m_count;
  const Eigen::Matrix2d k_oracle = g.inverse() * a;
  CHECK((model.K - k_oracle).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("identity dynamics give the identity operator") {
  const KoopmanModel model = fit_linear_map(1.0);
  CHECK((model.K - Eigen::Matrix2d::Identity()).lpNorm<Eigen::Infinity>() <
        1e-10);
}

TEST_CASE("operator shapes for the wheeled-robot dictionaries") {
  const acd::System system = acd::diffdrive_system();
  acd::SimProtocol protocol;
  protocol.trajectory_count = 3;
  protocol.duration = 2.0;
  protocol.period = 0.1;
  protocol.input_mean = Eigen::Vector2d::Zero();
  protocol.input_variance = Eigen::Vector2d::Constant(81.0);
  protocol.seed = 7;
  const TrajectoryDataset dataset = acd::generate_dataset(system, protocol);

  const Dictionary state = Dictionary::acd_state(parse_topology(system.topology));
  const Dictionary input = Dictionary::acd_input(2);
  const SnapshotPairs pairs = acd::assemble_snapshots(dataset, state, input);
  CHECK(pairs.regressors.cols() == 64);
  CHECK(pairs.targets.cols() == 16);
  const KoopmanModel model = acd::fit(pairs, state, input, protocol.period);
  CHECK(model.K.rows() == 64);
  CHECK(model.K.cols() == 16);
  CHECK(model.B.rows() == 16);
  CHECK(model.B.cols() == 4);
}

TEST_CASE("B exactly selects the embedded coordinates") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const acd::TopologySpace space = parse_topology("R^2 x S^1");
  const Dictionary acd_state = Dictionary::acd_state(space);
  const Dictionary ds_state = Dictionary::direct_sum_state(space, 2);
  TrajectoryDataset dataset;
  dataset.state_names = {"x", "y", "phi"};
  acd::Trajectory traj;
  traj.period = 1.0;
  traj.states = Eigen::MatrixXd::Random(6, 3);
  traj.inputs.resize(5, 0);
  dataset.trajectories.push_back(traj);

  for (const Dictionary& state : {acd_state, ds_state}) {
    const Dictionary input = state.kind() == Dictionary::Kind::kAcdKronecker
                                 ? Dictionary::acd_input(0)
                                 : Dictionary::direct_sum_input(0, 2);
    const KoopmanModel model = acd::fit(
        acd::assemble_snapshots(dataset, state, input), state, input, 1.0);
    // Every entry of B is 0 or 1.
    for (int i = 0; i < model.B.rows(); ++i) {
      for (int j = 0; j < model.B.cols(); ++j) {
        CHECK((model.B(i, j) == 0.0 || model.B(i, j) == 1.0));
      }
    }
    for (int trial = 0; trial < 25; ++trial) {
      Eigen::Vector3d x(coord(rng), coord(rng), coord(rng));
      const Eigen::VectorXd selected =
          model.B.transpose() * state.evaluate(x);
      CHECK((selected - acd::embed(space, x)).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }
}

TEST_CASE("the fitted operator is a least-squares optimum") {
  const acd::System system = acd::diffdrive_system();
  acd::SimProtocol protocol;
  protocol.trajectory_count = 5;
  protocol.duration = 2.0;
  protocol.period = 0.1;
  protocol.input_mean = Eigen::Vector2d::Zero();
  protocol.input_variance = Eigen::Vector2d::Constant(81.0);
  protocol.seed = 21;
  const TrajectoryDataset dataset = acd::generate_dataset(system, protocol);
  const Dictionary state = Dictionary::acd_state(parse_topology(system.topology));
  const Dictionary input = Dictionary::acd_input(2);
  const SnapshotPairs pairs = acd::assemble_snapshots(dataset, state, input);
  const KoopmanModel model = acd::fit(pairs, state, input, protocol.period);
  const double best = acd::residual(pairs, model.K);
  CHECK(best == model.residual);

  std::mt19937 rng(4);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd delta(model.K.rows(), model.K.cols());
    for (int i = 0; i < delta.rows(); ++i) {
      for (int j = 0; j < delta.cols(); ++j) delta(i, j) = normal(rng);
    }
    delta *= 1e-3 / delta.norm();
    CHECK(acd::residual(pairs, model.K + delta) >= best);
  }
}

TEST_CASE("estimation error shrinks with the sample count") {
  // Noisy linear map: the estimator's error should fall like 1/sqrt(M).
  const Dictionary state = Dictionary::acd_state(parse_topology("R^1"));
  const Dictionary input = Dictionary::acd_input(0);
  Eigen::Matrix2d k_exact;
  k_exact << 1.0, 0.0, 0.0, 0.5;

  std::vector<double> medians;
  for (const int m : {100, 1000, 10000}) {
    std::vector<double> errors;
    for (unsigned seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(seed * 7919 + 13);
      std::normal_distribution<double> normal(0.0, 1.0);
      SnapshotPairs pairs;
      pairs.regressors.resize(m, 2);
      pairs.targets.resize(m, 2);
      for (int i = 0; i < m; ++i) {
        const double x = normal(rng);
        const double next = 0.5 * x + 0.05 * normal(rng);
        pairs.regressors.row(i) << 1.0, x;
        pairs.targets.row(i) << 1.0, next;
      }
      pairs.pairs_per_trajectory = {m};
      const KoopmanModel model = acd::fit(pairs, state, input, 1.0);
      errors.push_back((model.K - k_exact).norm());
    }
    std::nth_element(errors.begin(), errors.begin() + 10, errors.end());
    medians.push_back(errors[10]);
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("decompose on the identity operator") {
  KoopmanModel model = fit_linear_map(1.0);
  acd::decompose(model);
  REQUIRE(model.eig.has_value());
  for (int n = 0; n < 2; ++n) {
    CHECK(std::abs(model.eig->eigenvalues(n) - 1.0) < 1e-10);
  }
  Eigen::VectorXd x(1);
  x << 1.75;
  CHECK((acd::spectral_step_embedded(model, x) - x).lpNorm<Eigen::Infinity>() <
        1e-10);
}

TEST_CASE("decompose recovers the linear map's spectrum") {
  KoopmanModel model = fit_linear_map(0.5);
  acd::decompose(model);
  REQUIRE(model.eig.has_value());
  std::vector<double> lambdas = {model.eig->eigenvalues(0).real(),
                                 model.eig->eigenvalues(1).real()};
  std::sort(lambdas.begin(), lambdas.end());
  CHECK(lambdas[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(lambdas[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(model.eig->eigenvalues.imag().norm() < 1e-12);
  // K xi = lambda xi within 1e-6 ||K||.
  const Eigen::MatrixXcd k_auto =
      acd::autonomous_operator(model).cast<std::complex<double>>();
  for (int n = 0; n < 2; ++n) {
    CHECK((k_auto.transpose() * model.eig->eigenfunctions.col(n) -
           model.eig->eigenvalues(n) * model.eig->eigenfunctions.col(n))
              .norm() < 1e-6 * model.K.norm());
  }
}

TEST_CASE("spectral predictor equals the linear predictor") {
  // Arbitrary stable operator over the R^2 dictionary, applied autonomously.
  const Dictionary state = Dictionary::acd_state(parse_topology("R^2"));
  const Dictionary input = Dictionary::acd_input(0);
  std::mt19937 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd k(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) k(i, j) = normal(rng);
  }
  k /= (1.1 * k.eigenvalues().cwiseAbs().maxCoeff());

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 2);
  for (int j = 0; j < 2; ++j) b(state.coordinate_entry(j), j) = 1.0;
  KoopmanModel model{state, input, k, b, 1.0, 0.0, std::nullopt};
  acd::decompose(model);

  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector2d x(normal(rng), normal(rng));
    const Eigen::VectorXd linear = acd::autonomous_step_embedded(model, x);
    const Eigen::VectorXd spectral = acd::spectral_step_embedded(model, x);
    CHECK((linear - spectral).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("validation failures surface as exceptions") {
  const Dictionary state = Dictionary::acd_state(parse_topology("R^1"));
  const Dictionary input = Dictionary::acd_input(0);
  TrajectoryDataset empty;
  CHECK_THROWS_AS(acd::assemble_snapshots(empty, state, input), ValidationError);

  TrajectoryDataset misaligned;
  misaligned.state_names = {"x"};
  acd::Trajectory traj;
  traj.period = 1.0;
  traj.states.resize(3, 1);
  traj.states << 1.0, 2.0, 3.0;
  traj.inputs.resize(3, 0);  // should be 2 rows
  misaligned.trajectories.push_back(traj);
  CHECK_THROWS_AS(acd::assemble_snapshots(misaligned, state, input),
                  ValidationError);

  TrajectoryDataset wrong_dim;
  wrong_dim.state_names = {"x", "y"};
  acd::Trajectory traj2;
  traj2.period = 1.0;
  traj2.states = Eigen::MatrixXd::Zero(3, 2);
  traj2.inputs.resize(2, 0);
  wrong_dim.trajectories.push_back(traj2);
  CHECK_THROWS_AS(acd::assemble_snapshots(wrong_dim, state, input),
                  ValidationError);

  SnapshotPairs no_pairs;
  no_pairs.regressors.resize(0, 2);
  no_pairs.targets.resize(0, 2);
  CHECK_THROWS_AS(acd::fit(no_pairs, state, input, 1.0), ValidationError);
}
