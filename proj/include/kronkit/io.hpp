//
// kronkit -- dense Matrix Market array I/O
//
// Supported format, bit-exact across write/read:
//   %%MatrixMarket matrix array {real|complex} general
//   % comment lines
//   rows cols
//   one entry per line, column-major; complex entries as "re im"
//

#ifndef KRONKIT_IO_HPP
#define KRONKIT_IO_HPP

#include <iosfwd>
#include <string>

#include "kronkit/matrix.hpp"

namespace kronkit {

// Parses a dense array matrix file. Throws ParseError (with the
// offending line) on malformed input; NaN and infinity tokens are
// rejected, not silently accepted.
AnyMatrix read_matrix(std::istream& in);
AnyMatrix read_matrix_file(const std::string& path);

// Writes the canonical form: no comments, one entry per line, 17
// significant digits (round-trip exact for doubles).
void write_matrix(const RealMatrix& m, std::ostream& out);
void write_matrix(const ComplexMatrix& m, std::ostream& out);
void write_matrix(const AnyMatrix& m, std::ostream& out);
void write_matrix_file(const AnyMatrix& m, const std::string& path);

std::string to_string(const AnyMatrix& m);

}  // namespace kronkit

#endif  // KRONKIT_IO_HPP
