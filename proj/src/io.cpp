#include "telechan/io.hpp"

#include <fstream>
#include <sstream>

#include "telechan/errors.hpp"

namespace telechan::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ValidationError("schema", "top-level value must be an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError("schema", std::string("missing field '") + key + "'");
  return *it;
}

int read_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ValidationError("schema", std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double read_number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError("schema", what + " must be a number");
  return v.get<double>();
}

Json probs_to_json(const ProbDist& p) {
  Json probs = Json::object();
  for (const auto& [k, v] : p.nonzero_entries()) probs[k.to_string()] = v;
  return probs;
}

ProbDist probs_from_json(int n, const Json& probs) {
  if (!probs.is_object()) throw ValidationError("schema", "'probs' must be an object");
  std::map<std::uint64_t, double> entries;
  for (const auto& [word, v] : probs.items()) {
    if (static_cast<int>(word.size()) != n) {
      throw ValidationError("word_length", "key '" + word + "' does not have " + std::to_string(n) + " digits");
    }
    PauliString k;
    try {
      k = PauliString::parse(word);
    } catch (const Error& e) {
      throw ValidationError("word_digits", e.what());
    }
    entries[k.index()] += read_number(v, "probability for '" + word + "'");
  }
  return ProbDist::sparse(n, std::move(entries));
}

}  // namespace

Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ValidationError("schema", what + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ValidationError("schema", what + " rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("square", what + " rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError("schema", what + " entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

Json resource_to_json(const ResourceState& chi) {
  Json j;
  j["n"] = chi.n();
  if (const auto* bd = std::get_if<BellDiagonalMedium>(&chi.payload())) {
    j["probs"] = probs_to_json(bd->probs);
  } else {
    j["matrix"] = complex_matrix_to_json(to_dense_matrix(chi));
  }
  return j;
}

ResourceState resource_from_json(const Json& j) {
  const int n = read_int(j, "n");
  if (n < 1) throw ValidationError("n_positive", "n must be >= 1");
  const bool has_matrix = j.contains("matrix");
  const bool has_probs = j.contains("probs");
  if (has_matrix == has_probs) throw ValidationError("schema", "exactly one of 'matrix' or 'probs' is required");
  if (has_probs) return ResourceState::bell_diagonal(probs_from_json(n, field(j, "probs")));
  if (n > kDensePairCutoff) {
    throw SizeError("dense medium with n=" + std::to_string(n) + " exceeds the cutoff " +
                    std::to_string(kDensePairCutoff));
  }
  return ResourceState::dense(n, complex_matrix_from_json(field(j, "matrix"), "matrix"));
}

Json channel_to_json(const PauliChannel& channel) {
  Json j;
  j["type"] = "pauli_channel";
  j["n"] = channel.n();
  j["probs"] = probs_to_json(channel.probs());
  return j;
}

PauliChannel channel_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string() || type.get<std::string>() != "pauli_channel") {
    throw ValidationError("type", "expected \"type\": \"pauli_channel\"");
  }
  const int n = read_int(j, "n");
  if (n < 1) throw ValidationError("n_positive", "n must be >= 1");
  return PauliChannel(probs_from_json(n, field(j, "probs")));
}

Json cov_to_json(const cv::CovMatrix& gamma) {
  Json j;
  j["modes"] = gamma.modes();
  j["layout"] = cv::CovMatrix::kLayout;
  Json rows = Json::array();
  const auto& m = gamma.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

cv::CovMatrix cov_from_json(const Json& j) {
  const int modes = read_int(j, "modes");
  if (modes < 1) throw ValidationError("modes_positive", "modes must be >= 1");
  const Json& layout = field(j, "layout");
  if (!layout.is_string() || layout.get<std::string>() != cv::CovMatrix::kLayout) {
    throw ValidationError("layout", std::string("layout must be \"") + cv::CovMatrix::kLayout + "\"");
  }
  const Json& rows = field(j, "matrix");
  const auto dim = static_cast<Eigen::Index>(2 * modes);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    throw ValidationError("dimension", "matrix must have 2*modes rows");
  }
  cv::RealMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ValidationError("dimension", "matrix must be square with 2*modes columns");
    }
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = read_number(row[static_cast<std::size_t>(c)], "matrix entry");
  }
  cv::CovMatrix gamma = (modes % 2 == 0) ? cv::CovMatrix::medium(std::move(m)) : cv::CovMatrix(std::move(m));
  cv::validate_physical(gamma);
  return gamma;
}

Json sim_report_to_json(const SimReport& report) {
  Json j;
  j["n"] = report.n;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["generator"] = report.generator;
  Json outcomes = Json::object();
  Json paulis = Json::object();
  for (std::size_t k = 0; k < report.outcome_counts.size(); ++k) {
    const std::string word = PauliString::from_index(report.n, k).to_string();
    outcomes[word] = {{"count", report.outcome_counts[k]}, {"probability", report.outcome_probabilities[k]}};
    paulis[word] = {{"count", report.pauli_counts[k]}, {"predicted", report.predicted_probs[k]}};
  }
  j["outcome_counts"] = std::move(outcomes);
  j["outcome_tv_distance"] = report.outcome_tv_distance;
  j["pauli_counts"] = std::move(paulis);
  j["tv_distance"] = report.tv_distance;
  j["trace_distance"] = report.trace_distance;
  j["empirical_output"] = complex_matrix_to_json(report.empirical_output);
  j["predicted_output"] = complex_matrix_to_json(report.predicted_output);
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

ResourceState load_resource_file(const std::string& path) { return resource_from_json(read_json_file(path)); }

cv::CovMatrix load_cov_file(const std::string& path) { return cov_from_json(read_json_file(path)); }

}  // namespace telechan::io
