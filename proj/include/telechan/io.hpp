#pragma once

#include <string>

#include "json.hpp"

#include "telechan/channel.hpp"
#include "telechan/cv_gaussian.hpp"
#include "telechan/resource.hpp"
#include "telechan/teleport_sim.hpp"

namespace telechan::io {

using Json = nlohmann::ordered_json;

/// Dense media: {"n", "matrix": [[[re, im], ...], ...]}.
/// Bell-diagonal media: {"n", "probs": {"<base-4 word>": p}}.
/// Structured media (phase gate, permutation mixture) are written densely.
Json resource_to_json(const ResourceState& chi);
ResourceState resource_from_json(const Json& j);

/// The Bell-diagonal schema plus "type": "pauli_channel".
Json channel_to_json(const PauliChannel& channel);
PauliChannel channel_from_json(const Json& j);

/// {"modes", "layout": "qqpp-ABinterleaved", "matrix": [[...]]}. Loading
/// checks symmetry and physicality.
Json cov_to_json(const cv::CovMatrix& gamma);
cv::CovMatrix cov_from_json(const Json& j);

Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& what);

Json sim_report_to_json(const SimReport& report);

/// Throws ParseError on syntax errors and unreadable files.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

ResourceState load_resource_file(const std::string& path);
cv::CovMatrix load_cov_file(const std::string& path);

}  // namespace telechan::io
