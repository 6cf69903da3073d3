#include "ntdlab/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ntdlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    // prefer the shortest representation that still round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(shorter, "%lf", &back);
        if (back == x) return shorter;
    }
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(&out), width_(header.size()) {
    row(header);
}

std::string CsvWriter::field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw std::logic_error("CsvWriter: field count mismatch");
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) *out_ << ',';
        *out_ << fields[i];
    }
    *out_ << '\n';
}

void export_field(std::ostream& out, const Eigen::VectorXd& field) {
    for (Eigen::Index i = 0; i < field.size(); ++i) out << format_double(field[i]) << '\n';
}

void export_ntd(std::ostream& out, const Eigen::MatrixXd& values) {
    out << "ntd " << values.rows() << '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(values(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd import_ntd(std::istream& in) {
    std::string tag;
    int dim = 0;
    if (!(in >> tag >> dim) || tag != "ntd" || dim < 1)
        throw std::runtime_error("import_ntd: expected 'ntd <dim>' header");
    Eigen::MatrixXd values(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!(in >> values(i, j))) throw std::runtime_error("import_ntd: truncated matrix");
    return values;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace ntdlab
