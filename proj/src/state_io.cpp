#include "lhs/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lhs {

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_state(std::ostream& out, const QuantumState& state) {
    const auto& layout = state.layout();
    out << "parties:";
    for (const auto& p : layout.parties()) out << " " << p;
    out << "\n";

    const Matrix& m = state.matrix();
    out << "matrix_re:\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << (j ? " " : "") << format_g17(m(i, j).real());
        }
        out << "\n";
    }
    out << "matrix_im:\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << (j ? " " : "") << format_g17(m(i, j).imag());
        }
        out << "\n";
    }
}

void write_state_file(const std::string& path, const QuantumState& state) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_state_file: cannot open '" + path + "' for writing");
    }
    write_state(out, state);
    if (!out) {
        throw std::runtime_error("write_state_file: failed while writing '" + path + "'");
    }
}

namespace {

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;   // skip blank lines
        const auto last = line.find_last_not_of(" \t\r");
        return line.substr(first, last - first + 1);
    }
    return "";
}

Eigen::MatrixXd read_real_matrix(std::istream& in, std::size_t dim, const char* field) {
    Eigen::MatrixXd m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::string line = next_content_line(in);
        if (line.empty()) {
            throw std::runtime_error(std::string("read_state: ") + field + " row " +
                                     std::to_string(i + 1) + " is missing");
        }
        std::istringstream row(line);
        for (std::size_t j = 0; j < dim; ++j) {
            if (!(row >> m(i, j))) {
                throw std::runtime_error(std::string("read_state: ") + field + " row " +
                                         std::to_string(i + 1) + " has fewer than " +
                                         std::to_string(dim) + " entries");
            }
        }
        double extra;
        if (row >> extra) {
            throw std::runtime_error(std::string("read_state: ") + field + " row " +
                                     std::to_string(i + 1) + " has more than " +
                                     std::to_string(dim) + " entries");
        }
    }
    return m;
}

} // namespace

QuantumState read_state(std::istream& in) {
    const std::string header = next_content_line(in);
    if (header.rfind("parties:", 0) != 0) {
        throw std::runtime_error("read_state: expected 'parties:' header, got '" + header + "'");
    }
    std::istringstream party_stream(header.substr(std::string("parties:").size()));
    std::vector<std::string> parties;
    std::string label;
    while (party_stream >> label) parties.push_back(label);
    if (parties.empty()) {
        throw std::runtime_error("read_state: no party labels listed");
    }
    QubitLayout layout(parties);
    const std::size_t dim = layout.dim();

    const std::string re_header = next_content_line(in);
    if (re_header != "matrix_re:") {
        throw std::runtime_error("read_state: expected 'matrix_re:', got '" + re_header + "'");
    }
    const Eigen::MatrixXd re = read_real_matrix(in, dim, "matrix_re");

    const std::string im_header = next_content_line(in);
    if (im_header != "matrix_im:") {
        throw std::runtime_error("read_state: expected 'matrix_im:', got '" + im_header + "'");
    }
    const Eigen::MatrixXd im = read_real_matrix(in, dim, "matrix_im");

    Matrix m(dim, dim);
    m.real() = re;
    m.imag() = im;
    return QuantumState(std::move(layout), std::move(m));
}

QuantumState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_state_file: cannot open '" + path + "'");
    }
    return read_state(in);
}

} // namespace lhs
