#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ntdlab {

/// Shortest-width formatting that round-trips a double exactly (%.17g).
std::string format_double(double x);

/// RFC-4180-style CSV writer: header row, '.' decimal separator, round-trip
/// exact doubles, CRLF-free (plain '\n') output.
class CsvWriter {
  public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);

    static std::string field(double x) { return format_double(x); }
    static std::string field(int x) { return std::to_string(x); }
    static std::string field(std::uint64_t x) { return std::to_string(x); }
    static std::string field(const std::string& s);

  private:
    std::ostream* out_;
    size_t width_;
};

/// NodalField text export: one value per line, node order.
void export_field(std::ostream& out, const Eigen::VectorXd& field);

/// Dense NtD export: header "ntd <dim>" then dim row-major lines.
void export_ntd(std::ostream& out, const Eigen::MatrixXd& values);
Eigen::MatrixXd import_ntd(std::istream& in);

/// FNV-1a 64-bit, used for config hashes in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ntdlab
