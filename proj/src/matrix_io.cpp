#include "egain/matrix_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "egain/errors.hpp"

namespace egain::io {

namespace {

double finite_number(const Json &v) {
    if(!v.is_number()) throw InvalidArgument("matrix entry is not a number");
    const double x = v.get<double>();
    if(!std::isfinite(x)) throw InvalidArgument("matrix entry is not finite");
    return x;
}

Complex complex_entry(const Json &v) {
    if(v.is_number()) return {finite_number(v), 0.0};
    if(v.is_array() && v.size() == 2) return {finite_number(v[0]), finite_number(v[1])};
    throw InvalidArgument("complex matrix entry must be a number or an [re, im] pair");
}

template<typename Scalar, typename Entry>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> parse_rows(const Json &j, Entry entry) {
    if(!j.is_array() || j.empty()) throw InvalidArgument("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    if(!j[0].is_array() || j[0].empty()) throw InvalidArgument("matrix rows must be non-empty arrays");
    const std::size_t cols = j[0].size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for(std::size_t r = 0; r < rows; ++r) {
        if(!j[r].is_array() || j[r].size() != cols) throw InvalidArgument("matrix rows have unequal lengths");
        for(std::size_t c = 0; c < cols; ++c) m(r, c) = entry(j[r][c]);
    }
    return m;
}

int modes_field(const Json &j) {
    if(!j.is_object() || !j.contains("s") || !j["s"].is_number_integer())
        throw InvalidArgument("expected an object with integer field 's'");
    return j["s"].get<int>();
}

} // namespace

Matrix matrix_from_json(const Json &j) { return parse_rows<double>(j, finite_number); }

CMatrix complex_matrix_from_json(const Json &j) { return parse_rows<Complex>(j, complex_entry); }

Vector vector_from_json(const Json &j) {
    if(!j.is_array()) throw InvalidArgument("vector must be an array of numbers");
    Vector v(j.size());
    for(std::size_t i = 0; i < j.size(); ++i) v(i) = finite_number(j[i]);
    return v;
}

Json to_json(const Matrix &m) {
    Json rows = Json::array();
    for(Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for(Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const CMatrix &m) {
    Json rows = Json::array();
    for(Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for(Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vector &v) {
    Json out = Json::array();
    for(Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json to_json(const HermitianCert &cert) {
    return Json{{"min_eigenvalue", cert.min_eigenvalue},
                {"tolerance", cert.tolerance},
                {"verdict", std::string(to_string(cert.verdict))}};
}

Json to_json(const GaussianState &state) {
    return Json{{"s", state.space().modes()}, {"mean", to_json(state.mean())}, {"alpha", to_json(state.alpha())}};
}

Json to_json(const GaussianChannel &channel) {
    return Json{{"s", channel.space().modes()}, {"K", to_json(channel.K())}, {"mu", to_json(channel.mu())}};
}

GaussianState state_from_json(const Json &j, double tol) {
    const PhaseSpace space(modes_field(j));
    if(!j.contains("alpha")) throw InvalidArgument("state is missing 'alpha'");
    Vector mean = j.contains("mean") ? vector_from_json(j["mean"]) : Vector::Zero(space.dim());
    return make_gaussian_state(space, std::move(mean), matrix_from_json(j["alpha"]), tol);
}

GaussianChannel channel_from_json(const Json &j, double tol) {
    const PhaseSpace space(modes_field(j));
    if(!j.contains("K") || !j.contains("mu")) throw InvalidArgument("channel is missing 'K' or 'mu'");
    return make_channel(matrix_from_json(j["K"]), matrix_from_json(j["mu"]), space, tol);
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if(!in) throw InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch(const Json::parse_error &e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file_atomic(const std::string &path, const std::string &content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if(!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
        out << content;
        if(!out) throw InvalidArgument("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, target);
}

} // namespace egain::io
