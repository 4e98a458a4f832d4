#include "kronkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

namespace kronkit {

namespace {

constexpr index_t max_dim = index_t(1) << 30;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Whitespace-delimited tokens with line tracking; lines whose first
// non-blank character is '%' are comments.
class TokenStream {
public:
    explicit TokenStream(std::istream& in) : in_(in) {}

    bool next(std::string& tok, long& line) {
        while (pos_ >= tokens_.size()) {
            std::string raw;
            if (!std::getline(in_, raw)) return false;
            ++line_;
            tokens_.clear();
            pos_ = 0;
            const auto first = raw.find_first_not_of(" \t\r");
            if (first == std::string::npos || raw[first] == '%') continue;
            std::istringstream ss(raw);
            std::string t;
            while (ss >> t) tokens_.push_back(t);
        }
        tok = tokens_[pos_++];
        line = line_;
        return true;
    }

    long line() const { return line_; }

private:
    std::istream& in_;
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
    long line_ = 1;  // line 1 is the banner, consumed before tokenizing
};

double parse_entry(const std::string& tok, long line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ParseError("non-numeric token '" + tok + "'", line);
    if (errno == ERANGE && std::abs(v) == HUGE_VAL)
        throw ParseError("value '" + tok + "' overflows double precision", line);
    if (!std::isfinite(v))
        throw ParseError("non-finite value '" + tok + "' rejected", line);
    return v;
}

index_t parse_dim(const std::string& tok, long line) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw ParseError("expected a positive integer, got '" + tok + "'", line);
    if (errno == ERANGE || v <= 0 || v > max_dim)
        throw ParseError("dimension '" + tok + "' out of range", line);
    return static_cast<index_t>(v);
}

struct Token {
    std::string text;
    long line;
};

Token require_token(TokenStream& ts, const char* what) {
    Token t;
    if (!ts.next(t.text, t.line))
        throw ParseError(std::string("unexpected end of input, expected ") + what,
                         ts.line());
    return t;
}

}  // namespace

AnyMatrix read_matrix(std::istream& in) {
    std::string banner_line;
    if (!std::getline(in, banner_line)) throw ParseError("empty input", 1);
    std::istringstream bs(banner_line);
    std::string banner, object, format, field, symmetry;
    if (!(bs >> banner >> object >> format >> field >> symmetry))
        throw ParseError("malformed header: expected "
                         "'%%MatrixMarket matrix array {real|complex} general'",
                         1);
    if (lower(banner) != "%%matrixmarket")
        throw ParseError("missing '%%MatrixMarket' banner", 1);
    if (lower(object) != "matrix")
        throw ParseError("unsupported object '" + object + "'; only 'matrix'", 1);
    if (lower(format) != "array") {
        if (lower(format) == "coordinate")
            throw ParseError("coordinate (sparse) format not supported; only dense 'array'",
                             1);
        throw ParseError("unsupported format '" + format + "'; only 'array'", 1);
    }
    const std::string f = lower(field);
    if (f != "real" && f != "complex")
        throw ParseError("unsupported field '" + field + "'; only 'real' or 'complex'", 1);
    if (lower(symmetry) != "general")
        throw ParseError("symmetry '" + symmetry +
                         "' not supported; only 'general' (structure is detected, "
                         "not asserted by the file)",
                         1);

    TokenStream ts(in);
    long line = 0;
    std::string tok;
    if (!ts.next(tok, line)) throw ParseError("missing size line", ts.line());
    const index_t rows = parse_dim(tok, line);
    const Token cols_tok = require_token(ts, "column count");
    const index_t cols = parse_dim(cols_tok.text, cols_tok.line);
    if (rows > max_dim / cols) throw ParseError("matrix too large", cols_tok.line);

    auto next_entry = [&ts](const char* what) {
        const Token t = require_token(ts, what);
        return parse_entry(t.text, t.line);
    };

    const index_t count = rows * cols;
    AnyMatrix result;
    if (f == "real") {
        std::vector<double> entries(static_cast<std::size_t>(count));
        for (index_t k = 0; k < count; ++k)
            entries[static_cast<std::size_t>(k)] = next_entry("matrix entry");
        result = RealMatrix::from_vec(entries, rows, cols);
    } else {
        std::vector<Complex> entries(static_cast<std::size_t>(count));
        for (index_t k = 0; k < count; ++k) {
            const double re = next_entry("real part");
            const double im = next_entry("imaginary part");
            entries[static_cast<std::size_t>(k)] = Complex(re, im);
        }
        result = ComplexMatrix::from_vec(entries, rows, cols);
    }
    if (ts.next(tok, line))
        throw ParseError("unexpected extra data '" + tok + "' after " +
                         std::to_string(count) + " entries",
                         line);
    return result;
}

AnyMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_matrix(in);
}

namespace {

void write_dims(const index_t rows, const index_t cols, std::ostream& out) {
    out << rows << " " << cols << "\n";
}

void check_sink(std::ostream& out) {
    if (!out) throw IoError("write failure on output stream");
}

}  // namespace

void write_matrix(const RealMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix array real general\n";
    write_dims(m.rows(), m.cols(), out);
    char buf[64];
    for (index_t j = 0; j < m.cols(); ++j)
        for (index_t i = 0; i < m.rows(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << "\n";
        }
    check_sink(out);
}

void write_matrix(const ComplexMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix array complex general\n";
    write_dims(m.rows(), m.cols(), out);
    char buf[128];
    for (index_t j = 0; j < m.cols(); ++j)
        for (index_t i = 0; i < m.rows(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(i, j).real(), m(i, j).imag());
            out << buf << "\n";
        }
    check_sink(out);
}

void write_matrix(const AnyMatrix& m, std::ostream& out) {
    std::visit([&out](const auto& mat) { write_matrix(mat, out); }, m);
}

void write_matrix_file(const AnyMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix(m, out);
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

std::string to_string(const AnyMatrix& m) {
    std::ostringstream ss;
    write_matrix(m, ss);
    return ss.str();
}

}  // namespace kronkit
