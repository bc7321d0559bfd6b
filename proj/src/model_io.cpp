#include "acdedmd/model_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

#include "acdedmd/errors.hpp"

namespace acd {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ValidationError("model file: matrix payload size mismatch");
  }
  Eigen::MatrixXd m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = data[k++].get<double>();
  }
  return m;
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  return json{{"real", matrix_to_json(m.real())},
              {"imag", matrix_to_json(m.imag())}};
}

Eigen::MatrixXcd complex_matrix_from_json(const json& j) {
  const Eigen::MatrixXd re = matrix_from_json(j.at("real"));
  const Eigen::MatrixXd im = matrix_from_json(j.at("imag"));
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw ValidationError("model file: mismatched complex matrix parts");
  }
  Eigen::MatrixXcd m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json dictionary_to_json(const Dictionary& dict) {
  json j;
  j["kind"] = dict.kind() == Dictionary::Kind::kAcdKronecker
                  ? "acd-kronecker"
                  : "hermite-direct-sum";
  j["order"] = dict.order();
  j["raw_dim"] = dict.raw_dim();
  if (dict.space().has_value()) {
    j["topology"] = dict.space()->expression();
  } else {
    j["topology"] = nullptr;
  }
  return j;
}

Dictionary dictionary_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int order = j.at("order").get<int>();
  const int raw_dim = j.at("raw_dim").get<int>();
  const bool has_space = !j.at("topology").is_null();
  if (kind == "acd-kronecker") {
    if (has_space) {
      return Dictionary::acd_state(
          parse_topology(j.at("topology").get<std::string>()));
    }
    return Dictionary::acd_input(raw_dim);
  }
  if (kind == "hermite-direct-sum") {
    if (has_space) {
      return Dictionary::direct_sum_state(
          parse_topology(j.at("topology").get<std::string>()), order);
    }
    return Dictionary::direct_sum_input(raw_dim, order);
  }
  throw ValidationError("model file: unknown dictionary kind '" + kind + "'");
}

}  // namespace

void save_model(const KoopmanModel& model, const std::string& path) {
  json payload;
  payload["period"] = model.period;
  payload["residual"] = model.residual;
  payload["hermite"] = "probabilist";
  payload["state_dictionary"] = dictionary_to_json(model.state_dict);
  payload["input_dictionary"] = dictionary_to_json(model.input_dict);
  payload["K"] = matrix_to_json(model.K);
  payload["B"] = matrix_to_json(model.B);
  if (model.eig.has_value()) {
    const auto& eig = *model.eig;
    Eigen::MatrixXcd values(eig.eigenvalues.size(), 1);
    values.col(0) = eig.eigenvalues;
    payload["eigendecomposition"] = {
        {"eigenvalues", complex_matrix_to_json(values)},
        {"eigenfunctions", complex_matrix_to_json(eig.eigenfunctions)},
        {"left_vectors", complex_matrix_to_json(eig.left_vectors)},
        {"modes", complex_matrix_to_json(eig.modes)}};
  } else {
    payload["eigendecomposition"] = nullptr;
  }

  json doc;
  doc["format"] = "acd-edmd-model";
  doc["format_version"] = kModelFormatVersion;
  doc["ordering_version"] = kOrderingVersion;
  doc["checksum"] = fnv1a(payload.dump());
  doc["payload"] = std::move(payload);

  std::ofstream file(path);
  if (!file) throw IoError("save_model: cannot open '" + path + "' for writing");
  file << doc.dump(2) << "\n";
  if (!file) throw IoError("save_model: failed writing '" + path + "'");
}

KoopmanModel load_model(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("load_model: cannot open '" + path + "'");
  json doc;
  try {
    file >> doc;
  } catch (const json::parse_error& e) {
    throw IoError("load_model: '" + path + "' is not valid JSON: " + e.what());
  }

  try {
    if (doc.at("format").get<std::string>() != "acd-edmd-model") {
      throw ValidationError("load_model: '" + path + "' is not a model file");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw ValidationError("load_model: unsupported format version " +
                            std::to_string(version));
    }
    const int ordering = doc.at("ordering_version").get<int>();
    if (ordering != kOrderingVersion) {
      throw ValidationError("load_model: unknown ordering version " +
                            std::to_string(ordering));
    }
    const json& payload = doc.at("payload");
    if (doc.at("checksum").get<std::uint64_t>() != fnv1a(payload.dump())) {
      throw IoError("load_model: checksum mismatch in '" + path + "'");
    }
    if (payload.at("hermite").get<std::string>() != "probabilist") {
      throw ValidationError("load_model: unknown Hermite convention tag");
    }

    KoopmanModel model{dictionary_from_json(payload.at("state_dictionary")),
                       dictionary_from_json(payload.at("input_dictionary")),
                       matrix_from_json(payload.at("K")),
                       matrix_from_json(payload.at("B")),
                       payload.at("period").get<double>(),
                       0.0, std::nullopt};
    model.residual = payload.at("residual").get<double>();
    if (!payload.at("eigendecomposition").is_null()) {
      const json& je = payload.at("eigendecomposition");
      Eigendecomposition eig;
      eig.eigenvalues = complex_matrix_from_json(je.at("eigenvalues")).col(0);
      eig.eigenfunctions = complex_matrix_from_json(je.at("eigenfunctions"));
      eig.left_vectors = complex_matrix_from_json(je.at("left_vectors"));
      eig.modes = complex_matrix_from_json(je.at("modes"));
      model.eig = std::move(eig);
    }
    return model;
  } catch (const json::exception& e) {
    throw ValidationError("load_model: malformed model file '" + path +
                          "': " + e.what());
  }
}

}  // namespace acd
