#include "vdwforge/certificate.hpp"

#include <fstream>
#include <sstream>

namespace vdw {

namespace {

constexpr int kColorsPerLine = 20;

std::uint64_t parse_u64(const std::string& tok, int line_no, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw CertParseError(line_no, std::string("expected unsigned integer for ") + what);
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        throw CertParseError(line_no, std::string("integer out of range for ") + what);
    }
}

// Reads "key value" and returns value; key must match exactly.
std::string expect_kv(std::istream& in, int& line_no, const std::string& key,
                      bool rest_of_line = false) {
    std::string line;
    if (!std::getline(in, line)) throw CertParseError(line_no + 1, "unexpected end of file");
    ++line_no;
    if (line.size() < key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ')
        throw CertParseError(line_no, "expected '" + key + " <value>'");
    std::string value = line.substr(key.size() + 1);
    if (!rest_of_line && value.find(' ') != std::string::npos)
        throw CertParseError(line_no, "trailing content after " + key);
    return value;
}

}  // namespace

std::string certificate_to_text(const Certificate& cert) {
    std::ostringstream os;
    os << "VDW-CERT v1\n";
    os << "N " << cert.n << "\n";
    os << "k " << cert.k << "\n";
    os << "r " << cert.r << "\n";
    os << "seed ";
    if (cert.seed) {
        os << *cert.seed;
    } else {
        os << "-";
    }
    os << "\n";
    os << "params " << cert.params << "\n";
    os << "attempts " << cert.attempts << "\n";
    os << "colors\n";
    for (std::size_t i = 0; i < cert.colors.size(); ++i) {
        os << cert.colors[i];
        const bool line_end =
            (i + 1) % kColorsPerLine == 0 || i + 1 == cert.colors.size();
        os << (line_end ? '\n' : ' ');
    }
    os << "verdict " << (cert.verified ? "VERIFIED" : "UNVERIFIED") << "\n";
    return os.str();
}

Certificate parse_certificate(std::istream& in) {
    Certificate cert;
    int line_no = 0;
    std::string line;
    if (!std::getline(in, line)) throw CertParseError(1, "empty file");
    ++line_no;
    if (line != "VDW-CERT v1") throw CertParseError(1, "bad magic, expected 'VDW-CERT v1'");

    // expect_kv advances line_no, so each value is read before its use below
    const std::string n_tok = expect_kv(in, line_no, "N");
    cert.n = parse_u64(n_tok, line_no, "N");
    const std::string k_tok = expect_kv(in, line_no, "k");
    cert.k = static_cast<int>(parse_u64(k_tok, line_no, "k"));
    const std::string r_tok = expect_kv(in, line_no, "r");
    cert.r = static_cast<int>(parse_u64(r_tok, line_no, "r"));
    const std::string seed_tok = expect_kv(in, line_no, "seed");
    if (seed_tok == "-") {
        cert.seed.reset();
    } else {
        cert.seed = parse_u64(seed_tok, line_no, "seed");
    }
    cert.params = expect_kv(in, line_no, "params", /*rest_of_line=*/true);
    const std::string attempts_tok = expect_kv(in, line_no, "attempts");
    cert.attempts = parse_u64(attempts_tok, line_no, "attempts");

    if (!std::getline(in, line)) throw CertParseError(line_no + 1, "unexpected end of file");
    ++line_no;
    if (line != "colors") throw CertParseError(line_no, "expected 'colors'");

    if (cert.k < 2) throw CertParseError(line_no, "k must be >= 2");
    if (cert.r < 1) throw CertParseError(line_no, "r must be >= 1");

    cert.colors.reserve(cert.n);
    while (cert.colors.size() < cert.n) {
        if (!std::getline(in, line))
            throw CertParseError(line_no + 1, "color array truncated");
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (cert.colors.size() >= cert.n)
                throw CertParseError(line_no, "more colors than N");
            const std::uint64_t v = parse_u64(tok, line_no, "color");
            if (v < 1 || v > static_cast<std::uint64_t>(cert.r))
                throw CertParseError(line_no, "color outside [1, r]");
            cert.colors.push_back(static_cast<std::uint16_t>(v));
        }
    }

    if (!std::getline(in, line)) throw CertParseError(line_no + 1, "missing verdict");
    ++line_no;
    if (line == "verdict VERIFIED") {
        cert.verified = true;
    } else if (line == "verdict UNVERIFIED") {
        cert.verified = false;
    } else {
        throw CertParseError(line_no, "expected 'verdict VERIFIED|UNVERIFIED'");
    }
    return cert;
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CertParseError(0, "cannot open " + path);
    return parse_certificate(in);
}

void save_certificate(const std::string& path, const Certificate& cert) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << certificate_to_text(cert);
}

}  // namespace vdw
