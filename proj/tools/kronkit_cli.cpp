//
// kronkit command line: Kronecker structure detection on matrix files.
//
// Exit codes: 0 success, 1 mathematically negative answer (not
// factorizable / no root), 2 input or usage error.
//

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kronkit/kronkit.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct PartitionFlags {
    kronkit::index_t m = 0, n = 0, p = 0, q = 0;
    kronkit::PartitionSpec spec() const { return {m, n, p, q}; }
};

void add_partition_flags(CLI::App* cmd, PartitionFlags& part, bool with_pq) {
    cmd->add_option("--m", part.m, "block-grid rows m")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n", part.n, "block-grid cols n")
        ->required()
        ->check(CLI::PositiveNumber);
    if (with_pq) {
        cmd->add_option("--p", part.p, "block rows p")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--q", part.q, "block cols q")
            ->required()
            ->check(CLI::PositiveNumber);
    }
}

void emit(const kronkit::AnyMatrix& m, const std::optional<std::string>& path,
          const char* tag) {
    if (path) {
        kronkit::write_matrix_file(m, *path);
    } else {
        std::cout << tag << "\n";
        kronkit::write_matrix(m, std::cout);
    }
}

void print_predicates(const kronkit::PredicateSet& ps, const std::string& name) {
    std::cout << name << " (" << ps.rows << " x " << ps.cols << ", ‖.‖_F = "
              << fmt(ps.norm) << ")\n";
    if (!ps.square) {
        std::cout << "  not square: all predicates false\n";
        return;
    }
    auto row = [](const char* label, const kronkit::PropertyCheck& c) {
        std::printf("  %-22s %-3s  deviation = %.17g\n", label, c.holds ? "yes" : "no",
                    c.deviation);
    };
    row("symmetric", ps.symmetric);
    row("skew-symmetric", ps.skew_symmetric);
    row("hermitian", ps.hermitian);
    row("skew-hermitian", ps.skew_hermitian);
    row("positive-definite", ps.positive_definite);
    row("unitary", ps.unitary);
    row("real-orthogonal", ps.real_orthogonal);
    row("complex-orthogonal", ps.complex_orthogonal);
}

int run_rearrange(const std::string& in, const PartitionFlags& part,
                  const std::optional<std::string>& out) {
    const auto any = kronkit::read_matrix_file(in);
    const auto r = std::visit(
        [&](const auto& m) -> kronkit::AnyMatrix {
            return kronkit::rearrange(m, part.spec());
        },
        any);
    emit(r, out, "block vec matrix:");
    return exit_ok;
}

template <typename T>
int factor_one(const kronkit::Matrix<T>& a, const kronkit::PartitionSpec& part,
               double tol, const std::optional<std::string>& out_b,
               const std::optional<std::string>& out_c) {
    const auto outcome = kronkit::kron_factor(a, part, tol);
    if (const auto* nf = std::get_if<kronkit::NotFactorizable<T>>(&outcome)) {
        std::cout << "NOT FACTORIZABLE\n";
        std::cout << "rank-one relative residual = "
                  << fmt(nf->certificate.relative_residual) << " (tol = " << fmt(tol)
                  << ")\n";
        std::cout << "dominant singular value = " << fmt(nf->certificate.sigma1) << "\n";
        return exit_negative;
    }
    const auto& pair = std::get<kronkit::FactorPair<T>>(outcome);
    std::cout << "FACTORIZABLE\n";
    std::cout << "reconstruction error = "
              << fmt(kronkit::frobenius_distance(a, kronkit::kron(pair.b, pair.c)))
              << "\n";
    emit(kronkit::AnyMatrix(pair.b), out_b, "factor B:");
    emit(kronkit::AnyMatrix(pair.c), out_c, "factor C:");
    return exit_ok;
}

template <typename T>
int nearest_one(const kronkit::Matrix<T>& a, const kronkit::PartitionSpec& part,
                const std::optional<std::string>& out_b,
                const std::optional<std::string>& out_c) {
    const auto nk = kronkit::nearest_kron(a, part);
    std::cout << "frobenius residual = " << fmt(nk.residual) << "\n";
    emit(kronkit::AnyMatrix(nk.factors.b), out_b, "factor B:");
    emit(kronkit::AnyMatrix(nk.factors.c), out_c, "factor C:");
    return exit_ok;
}

template <typename T>
int sqrt_print(const kronkit::SqrtOutcome<T>& outcome,
               const std::optional<std::string>& out) {
    if (const auto* nr = std::get_if<kronkit::NoRoot>(&outcome)) {
        std::cout << "NO ROOT: " << kronkit::to_string(nr->reason) << "\n";
        std::cout << "symmetry defect = " << fmt(nr->feasibility.symmetry_defect)
                  << ", rank-one residual = " << fmt(nr->feasibility.rank_residual)
                  << ", trace = " << fmt(nr->feasibility.trace_value) << "\n";
        return exit_negative;
    }
    const auto& res = std::get<kronkit::KronSqrtResult<T>>(outcome);
    std::cout << "ROOT FOUND (second root is its negation)\n";
    std::cout << "trace = " << fmt(res.trace_value) << ", sigma = " << fmt(res.sigma)
              << "\n";
    emit(kronkit::AnyMatrix(res.b), out, "root B:");
    return exit_ok;
}

int run_check(const std::string& in, double tol, bool as_square, kronkit::index_t m,
              kronkit::index_t n) {
    const auto any = kronkit::read_matrix_file(in);
    if (!as_square) {
        std::visit(
            [&](const auto& mat) {
                print_predicates(kronkit::predicates(mat, tol), "matrix");
            },
            any);
        return exit_ok;
    }
    return std::visit(
        [&](const auto& b) -> int {
            if (b.rows() != m || b.cols() != n)
                throw kronkit::DimensionError(
                    "--as-square expects the file to hold B of shape " +
                    std::to_string(m) + " x " + std::to_string(n));
            const auto rep = kronkit::verify_square_structure(b, tol);
            print_predicates(rep.a, "A = B kron B");
            print_predicates(rep.b, "B");
            print_predicates(rep.b_phase, "e^{i pi/4} B");
            print_predicates(rep.b_iscaled, "i B");
            std::cout << "equivalences:\n";
            for (const auto& item : rep.items) {
                std::cout << "  (" << item.label << ") " << item.description << ": ";
                if (!item.applicable)
                    std::cout << "n/a\n";
                else
                    std::cout << (item.holds() ? "OK" : "VIOLATION (tolerance artifact)")
                              << "\n";
            }
            std::cout << "internal consistency: " << (rep.consistent ? "OK" : "SUSPECT")
                      << "\n";
            return exit_ok;
        },
        any);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker product structure toolkit: exact factorization "
                 "A = B kron C, nearest Kronecker product, Kronecker square "
                 "roots A = B kron B over R and C, and structure predicates.\n"
                 "Matrices are dense Matrix Market array files (real or complex)."};
    app.require_subcommand(1);

    // accept the -o-b / -o-c spellings for the factor outputs; CLI11's
    // vector parse wants the arguments reversed
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = argc - 1; i >= 1; --i) {
        std::string a = argv[i];
        if (a == "-o-b") a = "--out-b";
        if (a == "-o-c") a = "--out-c";
        args.push_back(std::move(a));
    }

    std::string input;
    PartitionFlags part;
    double tol = kronkit::default_tol;
    std::optional<std::string> out, out_b, out_c;
    std::string field_sel = "auto";
    bool as_square = false;

    auto* rearrange_cmd =
        app.add_subcommand("rearrange", "write the block vec (rearrangement) matrix");
    add_partition_flags(rearrange_cmd, part, true);
    rearrange_cmd->add_option("input", input, "matrix file")->required();
    rearrange_cmd->add_option("-o,--output", out, "output file (default: stdout)");

    auto* factor_cmd = app.add_subcommand(
        "factor", "exact Kronecker factorization for the given partition");
    add_partition_flags(factor_cmd, part, true);
    factor_cmd->add_option("--tol", tol, "rank-one acceptance tolerance")
        ->check(CLI::NonNegativeNumber);
    factor_cmd->add_option("input", input, "matrix file")->required();
    factor_cmd->add_option("--out-b", out_b, "output file for B (also -o-b)");
    factor_cmd->add_option("--out-c", out_c, "output file for C (also -o-c)");

    auto* nearest_cmd = app.add_subcommand(
        "nearest", "nearest Kronecker product in the Frobenius norm");
    add_partition_flags(nearest_cmd, part, true);
    nearest_cmd->add_option("input", input, "matrix file")->required();
    nearest_cmd->add_option("--out-b", out_b, "output file for B (also -o-b)");
    nearest_cmd->add_option("--out-c", out_c, "output file for C (also -o-c)");

    auto* sqrt_cmd =
        app.add_subcommand("sqrt", "Kronecker square root B with A = B kron B");
    add_partition_flags(sqrt_cmd, part, false);
    sqrt_cmd->add_option("--field", field_sel, "root field: real or complex")
        ->check(CLI::IsMember({"real", "complex", "auto"}))
        ->default_str("input field");
    sqrt_cmd->add_option("--tol", tol, "feasibility tolerance")
        ->check(CLI::NonNegativeNumber);
    sqrt_cmd->add_option("input", input, "matrix file")->required();
    sqrt_cmd->add_option("-o,--output", out, "output file for B (default: stdout)");

    auto* check_cmd =
        app.add_subcommand("check", "structure predicate table for a matrix");
    check_cmd->add_option("input", input, "matrix file")->required();
    check_cmd->add_option("--tol", tol, "predicate tolerance")
        ->check(CLI::NonNegativeNumber);
    check_cmd->add_flag("--as-square", as_square,
                        "treat the file as B and report the B vs B kron B "
                        "structure equivalences (requires --m, --n)");
    check_cmd->add_option("--m", part.m, "rows of B (with --as-square)")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--n", part.n, "cols of B (with --as-square)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }

    try {
        if (rearrange_cmd->parsed()) return run_rearrange(input, part, out);

        if (factor_cmd->parsed() || nearest_cmd->parsed()) {
            const auto any = kronkit::read_matrix_file(input);
            return std::visit(
                [&](const auto& a) {
                    return factor_cmd->parsed()
                               ? factor_one(a, part.spec(), tol, out_b, out_c)
                               : nearest_one(a, part.spec(), out_b, out_c);
                },
                any);
        }

        if (sqrt_cmd->parsed()) {
            const auto any = kronkit::read_matrix_file(input);
            std::string field = field_sel;
            if (field == "auto")
                field = kronkit::field_of(any) == kronkit::Field::real ? "real"
                                                                       : "complex";
            if (field == "real") {
                const auto* rm = std::get_if<kronkit::RealMatrix>(&any);
                if (!rm)
                    throw kronkit::FieldError(
                        "--field real requires a real input matrix");
                return sqrt_print(kronkit::kron_sqrt_real(*rm, part.m, part.n, tol),
                                  out);
            }
            return std::visit(
                [&](const auto& a) {
                    return sqrt_print(
                        kronkit::kron_sqrt_complex(a, part.m, part.n, tol), out);
                },
                any);
        }

        if (check_cmd->parsed()) {
            if (as_square && (part.m <= 0 || part.n <= 0))
                throw kronkit::Error("--as-square requires --m and --n");
            return run_check(input, tol, as_square, part.m, part.n);
        }
    } catch (const kronkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
