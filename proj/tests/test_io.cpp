#include <doctest.h>

#include <cstring>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kronkit/io.hpp"
#include "testutil.hpp"

using namespace kronkit;
using testutil::Rng;

namespace {

AnyMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
}

template <typename T>
bool bit_equal(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(), sizeof(T) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("parses the identity") {
    const auto any = parse("%%MatrixMarket matrix array real general\n"
                           "2 2\n1\n0\n0\n1\n");
    REQUIRE(std::holds_alternative<RealMatrix>(any));
    CHECK(std::get<RealMatrix>(any) == RealMatrix::identity(2));
}

TEST_CASE("parses the 4x2 fixture in column-major order") {
    const auto any = parse("%%MatrixMarket matrix array real general\n"
                           "% the rank-two fixture\n"
                           "4 2\n2\n2\n3\n0\n1\n0\n0\n3\n");
    const RealMatrix expected{{2, 1}, {2, 0}, {3, 0}, {0, 3}};
    CHECK(std::get<RealMatrix>(any) == expected);
}

TEST_CASE("parses a complex entry as two tokens") {
    const auto any = parse("%%MatrixMarket matrix array complex general\n"
                           "1 1\n0 1\n");
    REQUIRE(std::holds_alternative<ComplexMatrix>(any));
    CHECK(std::get<ComplexMatrix>(any)(0, 0) == Complex(0, 1));
}

TEST_CASE("tolerates comments, blank lines, padding and shared lines") {
    const auto any = parse("%%MatrixMarket  MATRIX  Array  Real  General\n"
                           "% comment\n"
                           "\n"
                           "  % another comment\n"
                           "  2   2  \n"
                           "1 2\n"
                           "\n"
                           "3.0e0\n  4\n");
    const RealMatrix expected{{1, 3}, {2, 4}};
    CHECK(std::get<RealMatrix>(any) == expected);
}

TEST_CASE("scientific notation and extreme magnitudes survive") {
    const auto any = parse("%%MatrixMarket matrix array real general\n"
                           "3 1\n1.5e-300\n-2.25E+300\n4.9406564584124654e-324\n");
    const auto& m = std::get<RealMatrix>(any);
    CHECK(m(0, 0) == 1.5e-300);
    CHECK(m(1, 0) == -2.25e300);
    CHECK(m(2, 0) == 4.9406564584124654e-324);
}

TEST_CASE("malformed input is rejected with a line number") {
    auto expect_line = [](const std::string& text, long line) {
        try {
            parse(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };

    expect_line("", 1);
    expect_line("%%NotMarket matrix array real general\n1 1\n1\n", 1);
    expect_line("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n", 1);
    expect_line("%%MatrixMarket matrix array integer general\n1 1\n1\n", 1);
    expect_line("%%MatrixMarket matrix array pattern general\n1 1\n", 1);
    expect_line("%%MatrixMarket matrix array real symmetric\n1 1\n1\n", 1);
    expect_line("%%MatrixMarket vector array real general\n1 1\n1\n", 1);
    // bad size line
    expect_line("%%MatrixMarket matrix array real general\n0 2\n", 2);
    expect_line("%%MatrixMarket matrix array real general\n2 x\n", 2);
    // wrong entry count
    expect_line("%%MatrixMarket matrix array real general\n2 1\n1\n", 3);
    expect_line("%%MatrixMarket matrix array real general\n1 1\n1\n2\n", 4);
    // bad tokens
    expect_line("%%MatrixMarket matrix array real general\n1 1\nfoo\n", 3);
    expect_line("%%MatrixMarket matrix array real general\n2 1\n1\nnan\n", 4);
    expect_line("%%MatrixMarket matrix array real general\n2 1\ninf\n1\n", 3);
    expect_line("%%MatrixMarket matrix array real general\n1 1\n1e999\n", 3);
    // complex entries need two numbers
    expect_line("%%MatrixMarket matrix array complex general\n1 1\n1\n", 3);
}

TEST_CASE("write then read is bit-exact on random matrices") {
    Rng rng(701);
    for (int trial = 0; trial < 30; ++trial) {
        const index_t r = 1 + static_cast<index_t>(rng() % 5);
        const index_t c = 1 + static_cast<index_t>(rng() % 5);
        RealMatrix m = testutil::random_real(rng, r, c);
        // sprinkle awkward values
        m(0, 0) = -0.0;
        if (m.size() > 2) m.data()[1] = 1.0 / 3.0;
        if (m.size() > 3) m.data()[2] = 1e-308;
        std::ostringstream out;
        write_matrix(m, out);
        const auto back = parse(out.str());
        CHECK(bit_equal(std::get<RealMatrix>(back), m));

        const ComplexMatrix z = testutil::random_complex(rng, r, c);
        std::ostringstream zout;
        write_matrix(z, zout);
        CHECK(bit_equal(std::get<ComplexMatrix>(parse(zout.str())), z));
    }
}

TEST_CASE("read then write canonicalizes and is stable") {
    const std::string noncanonical =
        "%%MatrixMarket matrix array real general\n"
        "% comment to drop\n"
        "2 2\n"
        "1 2 3\n"
        "0.5\n";
    const auto m = parse(noncanonical);
    std::ostringstream first;
    write_matrix(m, first);
    const std::string canonical =
        "%%MatrixMarket matrix array real general\n"
        "2 2\n1\n2\n3\n0.5\n";
    CHECK(first.str() == canonical);

    std::ostringstream second;
    write_matrix(parse(first.str()), second);
    CHECK(second.str() == first.str());
}

TEST_CASE("file helpers report IO errors") {
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/kronkit.mtx"), IoError);
    CHECK_THROWS_AS(
        write_matrix_file(AnyMatrix(RealMatrix::identity(1)), "/nonexistent/dir/out.mtx"),
        IoError);
}
