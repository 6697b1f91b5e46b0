#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdw {

// Serialized construction output: (N, k, r, seed, coloring) plus the
// verification verdict. A VERIFIED certificate re-verifies from the file
// alone; the verdict line is advisory for readers, never trusted.
struct Certificate {
    std::uint64_t n = 0;
    int k = 0;
    int r = 0;
    std::optional<std::uint64_t> seed;    // serialized as "-" when absent
    std::string params;                   // single free-text line
    std::uint64_t attempts = 0;
    std::vector<std::uint16_t> colors;    // length n, values 1..r, indexed by residue
    bool verified = false;
};

struct CertParseError : std::runtime_error {
    int line = 0;
    CertParseError(int line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

// Text format, fixed byte-for-byte (UTF-8, LF endings):
//   VDW-CERT v1
//   N <int>
//   k <int>
//   r <int>
//   seed <uint64|->
//   params <single line>
//   attempts <int>
//   colors
//   <N whitespace-separated ints, wrapped 20 per line>
//   verdict VERIFIED|UNVERIFIED
std::string certificate_to_text(const Certificate& cert);
Certificate parse_certificate(std::istream& in);  // throws CertParseError

Certificate load_certificate(const std::string& path);
void save_certificate(const std::string& path, const Certificate& cert);

}  // namespace vdw
