#pragma once

// Matrix exchange format: one JSON value per file, an array of rows, each an
// array of finite numbers, row-major, interleaved (q, p) ordering. Complex
// entries are [re, im] pairs. States are {s, mean, alpha}; channels {s, K, mu}.

#include <json.hpp>
#include <string>

#include "egain/channels.hpp"

namespace egain::io {

using Json = nlohmann::json;

Matrix matrix_from_json(const Json &j);
CMatrix complex_matrix_from_json(const Json &j);
Vector vector_from_json(const Json &j);

Json to_json(const Matrix &m);
Json to_json(const CMatrix &m);
Json to_json(const Vector &v);
Json to_json(const HermitianCert &cert);
Json to_json(const GaussianState &state);
Json to_json(const GaussianChannel &channel);

GaussianState state_from_json(const Json &j, double tol = kDefaultTolerance);
GaussianChannel channel_from_json(const Json &j, double tol = kDefaultTolerance);

Json read_json_file(const std::string &path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace egain::io
