//
// end-to-end checks of the command line tool; exercises the documented
// exit code contract: 0 ok, 1 negative answer, 2 usage/input error.
//

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "kronkit/core.hpp"
#include "kronkit/io.hpp"

#ifndef KRONKIT_CLI_PATH
#error "KRONKIT_CLI_PATH must point at the CLI binary"
#endif

using namespace kronkit;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliFixture {
public:
    CliFixture() {
        dir_ = fs::temp_directory_path() /
               ("kronkit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~CliFixture() { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write_file(const std::string& name, const std::string& content) const {
        std::ofstream out(path(name));
        out << content;
    }

    RunResult run(const std::string& args) const {
        const fs::path out = path("stdout.txt");
        const fs::path err = path("stderr.txt");
        const std::string cmd = std::string(KRONKIT_CLI_PATH) + " " + args + " > " +
                                out.string() + " 2> " + err.string();
        const int raw = std::system(cmd.c_str());
        return RunResult{WEXITSTATUS(raw), slurp(out), slurp(err)};
    }

private:
    fs::path dir_;
};

const char* example_fixture =
    "%%MatrixMarket matrix array real general\n"
    "4 2\n2\n2\n3\n0\n1\n0\n0\n3\n";

const char* minus_one_fixture =
    "%%MatrixMarket matrix array real general\n"
    "1 1\n-1\n";

}  // namespace

TEST_CASE("factor on the rank-two fixture exits 1 with evidence") {
    CliFixture fx;
    fx.write_file("example1.mtx", example_fixture);
    const auto r = fx.run("factor --m 2 --n 1 --p 2 --q 2 " +
                          fx.path("example1.mtx").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("NOT FACTORIZABLE") != std::string::npos);
    CHECK(r.out.find("residual") != std::string::npos);
    // sqrt(6/21) to the digits power iteration pins down
    CHECK(r.out.find("0.5345224838248") != std::string::npos);
}

TEST_CASE("factor on an exact product exits 0 and writes both factors") {
    CliFixture fx;
    const RealMatrix b{{1, 2}, {3, 4}};
    const RealMatrix c{{0, 1}, {1, 0}};
    write_matrix_file(AnyMatrix(kron(b, c)), fx.path("prod.mtx").string());
    const auto r = fx.run("factor --m 2 --n 2 --p 2 --q 2 " +
                          fx.path("prod.mtx").string() + " -o-b " +
                          fx.path("B.mtx").string() + " -o-c " +
                          fx.path("C.mtx").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("FACTORIZABLE") != std::string::npos);
    const auto bb = std::get<RealMatrix>(read_matrix_file(fx.path("B.mtx").string()));
    const auto cc = std::get<RealMatrix>(read_matrix_file(fx.path("C.mtx").string()));
    CHECK(frobenius_distance(kron(bb, cc), kron(b, c)) <= 1e-12);
}

TEST_CASE("rearrange writes the block vec matrix") {
    CliFixture fx;
    fx.write_file("example1.mtx", example_fixture);
    const auto r = fx.run("rearrange --m 2 --n 1 --p 2 --q 2 " +
                          fx.path("example1.mtx").string() + " -o " +
                          fx.path("R.mtx").string());
    CHECK(r.code == 0);
    const auto rr = std::get<RealMatrix>(read_matrix_file(fx.path("R.mtx").string()));
    CHECK(rr == RealMatrix{{2, 2, 1, 0}, {3, 0, 0, 3}});
}

TEST_CASE("nearest always reports the Frobenius residual") {
    CliFixture fx;
    fx.write_file("example1.mtx", example_fixture);
    const auto r = fx.run("nearest --m 2 --n 1 --p 2 --q 2 " +
                          fx.path("example1.mtx").string() + " --out-b " +
                          fx.path("B.mtx").string() + " --out-c " +
                          fx.path("C.mtx").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("frobenius residual = 2.449489742783") != std::string::npos);
}

TEST_CASE("sqrt of [[-1]]: complex root file, real negative-trace refusal") {
    CliFixture fx;
    fx.write_file("minus_one.mtx", minus_one_fixture);

    const auto complex_run =
        fx.run("sqrt --m 1 --n 1 --field complex " + fx.path("minus_one.mtx").string() +
               " -o " + fx.path("B.mtx").string());
    CHECK(complex_run.code == 0);
    const std::string root_file = slurp(fx.path("B.mtx"));
    CHECK(root_file.find("complex") != std::string::npos);
    CHECK(root_file.find("0 1") != std::string::npos);

    const auto real_run =
        fx.run("sqrt --m 1 --n 1 --field real " + fx.path("minus_one.mtx").string());
    CHECK(real_run.code == 1);
    CHECK(real_run.out.find("negative-trace") != std::string::npos);
}

TEST_CASE("sqrt defaults to the field of the input file") {
    CliFixture fx;
    fx.write_file("minus_one.mtx", minus_one_fixture);
    const auto r = fx.run("sqrt --m 1 --n 1 " + fx.path("minus_one.mtx").string());
    CHECK(r.code == 1);  // real file -> real mode -> negative trace
}

TEST_CASE("sqrt --field real on a complex file is a usage error") {
    CliFixture fx;
    fx.write_file("c.mtx", "%%MatrixMarket matrix array complex general\n1 1\n0 1\n");
    const auto r = fx.run("sqrt --m 1 --n 1 --field real " + fx.path("c.mtx").string());
    CHECK(r.code == 2);
    CHECK(r.err.find("real") != std::string::npos);
}

TEST_CASE("check prints the predicate table") {
    CliFixture fx;
    fx.write_file("eye.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");
    const auto r = fx.run("check " + fx.path("eye.mtx").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("symmetric") != std::string::npos);
    CHECK(r.out.find("unitary") != std::string::npos);

    const auto sq = fx.run("check --as-square --m 2 --n 2 " + fx.path("eye.mtx").string());
    CHECK(sq.code == 0);
    CHECK(sq.out.find("internal consistency: OK") != std::string::npos);
}

TEST_CASE("input and usage errors exit 2") {
    CliFixture fx;
    fx.write_file("bad.mtx", "not a matrix market file\n");
    fx.write_file("eye.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");

    CHECK(fx.run("factor --m 2 --n 1 --p 2 --q 2 " + fx.path("missing.mtx").string())
              .code == 2);
    CHECK(fx.run("factor --m 2 --n 1 --p 2 --q 2 " + fx.path("bad.mtx").string()).code ==
          2);
    CHECK(fx.run("factor --m 3 --n 1 --p 2 --q 2 " + fx.path("eye.mtx").string()).code ==
          2);
    CHECK(fx.run("factor " + fx.path("eye.mtx").string()).code == 2);
    CHECK(fx.run("frobnicate " + fx.path("eye.mtx").string()).code == 2);
    CHECK(fx.run("").code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    CliFixture fx;
    fx.write_file("example1.mtx", example_fixture);
    const std::string cmd = "nearest --m 2 --n 1 --p 2 --q 2 " +
                            fx.path("example1.mtx").string() + " --out-b " +
                            fx.path("B.mtx").string() + " --out-c " +
                            fx.path("C.mtx").string();
    const auto first = fx.run(cmd);
    const std::string b1 = slurp(fx.path("B.mtx"));
    const std::string c1 = slurp(fx.path("C.mtx"));
    const auto second = fx.run(cmd);
    CHECK(first.out == second.out);
    CHECK(b1 == slurp(fx.path("B.mtx")));
    CHECK(c1 == slurp(fx.path("C.mtx")));
}
