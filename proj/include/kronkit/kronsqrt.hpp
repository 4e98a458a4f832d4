//
// kronkit -- Kronecker square roots A = B kron B over R and C
//
// A nonzero m^2 x n^2 matrix has a complex root exactly when its block
// vec matrix is symmetric of rank one; a real matrix additionally needs
// a positive trace of that block vec matrix. Roots come in +/- pairs;
// the returned representative is sign-canonical.
//

#ifndef KRONKIT_KRONSQRT_HPP
#define KRONKIT_KRONSQRT_HPP

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "kronkit/factor.hpp"

namespace kronkit {

enum class NoRootReason { not_symmetric, not_rank_one, negative_trace };

inline const char* to_string(NoRootReason r) {
    switch (r) {
        case NoRootReason::not_symmetric: return "not-symmetric";
        case NoRootReason::not_rank_one: return "not-rank-one";
        case NoRootReason::negative_trace: return "negative-trace";
    }
    return "unknown";
}

struct SqrtFeasibility {
    bool symmetric = false;
    bool rank_one = false;
    double trace_value = 0.0;     // real part of tr(rearrange(A))
    double symmetry_defect = 0.0; // ‖R - R^T‖_F
    double rank_residual = 0.0;   // relative rank-one residual of R
    double r_norm = 0.0;          // ‖R‖_F
};

struct NoRoot {
    NoRootReason reason;
    SqrtFeasibility feasibility;
};

template <typename T>
struct KronSqrtResult {
    Matrix<T> b;         // the root; -b is the other one
    Field field;
    double trace_value;  // tr(rearrange(A)), real part
    double sigma;        // dominant singular value of rearrange(A)
};

template <typename T>
using SqrtOutcome = std::variant<KronSqrtResult<T>, NoRoot>;

namespace detail {

template <typename T>
struct SquareAnalysis {
    Matrix<T> r;
    RankOneCertificate<T> cert;
    SqrtFeasibility report;
};

template <typename T>
SquareAnalysis<T> analyze_square(const Matrix<T>& a, index_t m, index_t n, double tol) {
    require_nonneg_tol(tol);
    if (m <= 0 || n <= 0) throw DimensionError("root shape m, n must be positive");
    if (a.rows() != m * m || a.cols() != n * n)
        throw DimensionError("matrix must be m^2 x n^2 (expected " +
                             std::to_string(m * m) + " x " + std::to_string(n * n) +
                             ", got " + std::to_string(a.rows()) + " x " +
                             std::to_string(a.cols()) + ")");
    if (a.is_zero()) throw ZeroMatrixError("Kronecker square root requires a nonzero matrix");

    SquareAnalysis<T> out{rearrange(a, PartitionSpec{m, n, m, n}), {}, {}};
    const Matrix<T>& r = out.r;
    out.report.r_norm = r.frobenius_norm();
    out.report.symmetry_defect = frobenius_distance(r, r.transpose());
    out.report.symmetric = out.report.symmetry_defect <= tol * out.report.r_norm;
    out.cert = rank_one_test(r, tol);
    out.report.rank_residual = out.cert.relative_residual;
    out.report.rank_one = out.cert.relative_residual <= tol;
    out.report.trace_value = real_part(r.trace());
    return out;
}

// (R + R^T)/2 projected onto its best rank-one approximation; the
// projection is skipped when the rank-one fit is already exact.
template <typename T>
Matrix<T> symmetric_rank_one_projection(const Matrix<T>& r, double rank_residual) {
    const index_t n = r.rows();
    Matrix<T> s(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) s(i, j) = T{0.5} * (r(i, j) + r(j, i));
    if (rank_residual == 0.0) return s;

    const auto triple = dominant_triple(s);
    Matrix<T> z(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) {
            const T uv = triple.u[static_cast<std::size_t>(i)] *
                         triple.v[static_cast<std::size_t>(j)];
            const T vu = triple.v[static_cast<std::size_t>(i)] *
                         triple.u[static_cast<std::size_t>(j)];
            z(i, j) = T{0.5 * triple.sigma} * (uv + vu);
        }
    return z;
}

// Principal square root, argument of the result in (-pi/2, pi/2].
inline Complex principal_sqrt(Complex z) {
    Complex w = std::sqrt(z);
    if (w.real() == 0.0 && w.imag() < 0.0) w = -w;
    return w;
}

// Largest-modulus entry gets a nonnegative real part; ties on zero real
// part resolve to positive imaginary part, earlier index wins.
template <typename T>
void canonical_sign(std::vector<T>& w) {
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double m = std::abs(w[i]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    const double re = real_part(w[k]);
    const double im = imag_part(w[k]);
    if (re < 0.0 || (re == 0.0 && im < 0.0))
        for (T& v : w) v = -v;
}

template <typename T>
index_t max_abs_diagonal(const Matrix<T>& z) {
    index_t s = 0;
    double best = -1.0;
    for (index_t i = 0; i < z.rows(); ++i) {
        const double m = std::abs(z(i, i));
        if (m > best) {
            best = m;
            s = i;
        }
    }
    return s;
}

}  // namespace detail

// Feasibility report for A = B kron B with B of shape m x n: symmetry
// and rank-one status of the block vec matrix, plus its trace.
template <typename T>
SqrtFeasibility sqrt_feasibility(const Matrix<T>& a, index_t m, index_t n,
                                 double tol = default_tol) {
    return detail::analyze_square(a, m, n, tol).report;
}

// Complex Kronecker square root. For a rank-one symmetric block vec
// matrix Z = w w^T the root is read off a pivot column: w_s is the
// principal square root of the largest-modulus diagonal entry and
// w_i = Z_is / w_s.
template <typename T>
SqrtOutcome<Complex> kron_sqrt_complex(const Matrix<T>& a, index_t m, index_t n,
                                       double tol = default_tol) {
    auto an = detail::analyze_square(a, m, n, tol);
    if (!an.report.symmetric) return NoRoot{NoRootReason::not_symmetric, an.report};
    if (!an.report.rank_one) return NoRoot{NoRootReason::not_rank_one, an.report};

    const ComplexMatrix z = detail::symmetric_rank_one_projection(
        to_complex(an.r), an.report.rank_residual);
    const index_t s = detail::max_abs_diagonal(z);
    const Complex ws = detail::principal_sqrt(z(s, s));
    if (std::abs(ws) == 0.0)
        throw ConvergenceError("rank-one projection has a vanishing diagonal");

    std::vector<Complex> w(static_cast<std::size_t>(z.rows()));
    for (index_t i = 0; i < z.rows(); ++i) w[static_cast<std::size_t>(i)] = z(i, s) / ws;
    w[static_cast<std::size_t>(s)] = ws;
    detail::canonical_sign(w);

    return KronSqrtResult<Complex>{ComplexMatrix::from_vec(w, m, n), Field::cplx,
                                   an.report.trace_value, an.cert.sigma1};
}

// Real Kronecker square root: additionally requires a positive trace of
// the block vec matrix. With lambda = tr(R) and q the normalized pivot
// column of the rank-one symmetric projection, vec(B) = sqrt(lambda) q.
inline SqrtOutcome<double> kron_sqrt_real(const RealMatrix& a, index_t m, index_t n,
                                          double tol = default_tol) {
    auto an = detail::analyze_square(a, m, n, tol);
    if (!an.report.symmetric) return NoRoot{NoRootReason::not_symmetric, an.report};
    if (!an.report.rank_one) return NoRoot{NoRootReason::not_rank_one, an.report};
    const double lambda = an.report.trace_value;
    // zero-trace borderline is rejected rather than guessed
    if (lambda <= tol * an.report.r_norm)
        return NoRoot{NoRootReason::negative_trace, an.report};

    const RealMatrix z =
        detail::symmetric_rank_one_projection(an.r, an.report.rank_residual);
    const index_t s = detail::max_abs_diagonal(z);

    std::vector<double> w(static_cast<std::size_t>(z.rows()));
    double qn = 0.0;
    for (index_t i = 0; i < z.rows(); ++i) {
        w[static_cast<std::size_t>(i)] = z(i, s);
        qn += z(i, s) * z(i, s);
    }
    qn = std::sqrt(qn);
    if (qn == 0.0) throw ConvergenceError("rank-one projection has a vanishing pivot column");
    const double scale = std::sqrt(lambda) / qn;
    for (double& v : w) v *= scale;
    detail::canonical_sign(w);

    return KronSqrtResult<double>{RealMatrix::from_vec(w, m, n), Field::real, lambda,
                                  an.cert.sigma1};
}

}  // namespace kronkit

#endif  // KRONKIT_KRONSQRT_HPP
