//
// kronkit -- exact Kronecker factorization and nearest Kronecker product
//
// A = B kron C for a given partition holds exactly when the block vec
// matrix R = rearrange(A) has rank one; the dominant singular triple of
// R yields both the decision and the factors.
//

#ifndef KRONKIT_FACTOR_HPP
#define KRONKIT_FACTOR_HPP

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "kronkit/core.hpp"
#include "kronkit/matrix.hpp"

namespace kronkit {

inline constexpr double default_tol = 1e-10;

namespace detail {

inline void require_nonneg_tol(double tol) {
    if (!(tol >= 0.0)) throw Error("tolerance must be nonnegative");
}

template <typename T>
double norm2(const std::vector<T>& x) {
    return std::sqrt(kernels::frobenius_sq(x.data(), static_cast<index_t>(x.size()), 1));
}

template <typename T>
void scale_vec(std::vector<T>& x, double s) {
    for (T& v : x) v *= s;
}

template <typename T>
T dot_conj(const std::vector<T>& x, const std::vector<T>& y) {
    T acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += conj_of(x[i]) * y[i];
    return acc;
}

// Dominant singular triple in the plain-transpose convention:
// R is approximated by sigma * u * v^T (v carries the conjugate of the
// right singular vector, matching vec(B) vec(C)^T factorizations).
template <typename T>
struct SingularTriple {
    double sigma = 0.0;
    std::vector<T> u, v;
};

// Power iteration on the smaller Gram matrix (R^H R or R R^H).
// Deterministic start vector: magnitude sums of R along the iteration
// direction, then all-ones, then canonical basis vectors. The later
// fallbacks matter on inputs whose magnitude-sum vector lies exactly in
// the null space (e.g. R = [[1,-1],[1,-1]]).
template <typename T>
SingularTriple<T> dominant_triple(const Matrix<T>& r, int max_iter = 10000,
                                  double rel_tol = 1e-14) {
    const index_t rows = r.rows();
    const index_t cols = r.cols();
    const bool v_space = cols <= rows;
    const index_t dim = v_space ? cols : rows;
    const index_t other = v_space ? rows : cols;

    std::vector<T> x(static_cast<std::size_t>(dim));
    std::vector<T> mid(static_cast<std::size_t>(other));
    std::vector<T> z(static_cast<std::size_t>(dim));

    auto gram_apply = [&](const std::vector<T>& in, std::vector<T>& out) {
        if (v_space) {
            kernels::matvec(r.data(), rows, cols, in.data(), mid.data());
            kernels::matvec_h(r.data(), rows, cols, mid.data(), out.data());
        } else {
            kernels::matvec_h(r.data(), rows, cols, in.data(), mid.data());
            kernels::matvec(r.data(), rows, cols, mid.data(), out.data());
        }
    };

    auto load_start = [&](int candidate) -> bool {
        if (candidate == 0) {
            // magnitude sums: column sums when iterating in v-space,
            // row sums when iterating in u-space
            std::fill(x.begin(), x.end(), T{});
            for (index_t j = 0; j < cols; ++j)
                for (index_t i = 0; i < rows; ++i) {
                    const double mag = std::abs(r(i, j));
                    if (v_space)
                        x[static_cast<std::size_t>(j)] += T{mag};
                    else
                        x[static_cast<std::size_t>(i)] += T{mag};
                }
        } else if (candidate == 1) {
            std::fill(x.begin(), x.end(), T{1});
        } else if (candidate - 2 < dim) {
            std::fill(x.begin(), x.end(), T{});
            x[static_cast<std::size_t>(candidate - 2)] = T{1};
        } else {
            return false;
        }
        const double n = norm2(x);
        if (n == 0.0) return false;
        scale_vec(x, 1.0 / n);
        return true;
    };

    SingularTriple<T> triple;
    triple.u.assign(static_cast<std::size_t>(rows), T{});
    triple.v.assign(static_cast<std::size_t>(cols), T{});

    int candidate = 0;
    if (!load_start(candidate)) return triple;  // R = 0: sigma stays 0

    double sigma = 0.0;
    double sigma_prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        gram_apply(x, z);
        const double lambda = std::max(real_part(dot_conj(x, z)), 0.0);
        sigma = std::sqrt(lambda);
        const double zn = norm2(z);
        if (zn == 0.0) {
            // start vector sits in the null space; advance the fallback chain
            bool ok = false;
            while (!ok) {
                ++candidate;
                if (candidate - 2 >= dim) return triple;  // R = 0
                ok = load_start(candidate);
            }
            sigma_prev = -1.0;
            continue;
        }
        scale_vec(z, 1.0 / zn);
        x.swap(z);
        if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) < rel_tol * sigma) break;
        sigma_prev = sigma;
    }

    // one-step recovery of the other singular vector
    if (v_space) {
        kernels::matvec(r.data(), rows, cols, x.data(), mid.data());
        const double sn = norm2(mid);
        if (sn == 0.0) return triple;
        triple.sigma = sn;
        scale_vec(mid, 1.0 / sn);
        triple.u = mid;
        for (index_t j = 0; j < cols; ++j)
            triple.v[static_cast<std::size_t>(j)] = conj_of(x[static_cast<std::size_t>(j)]);
    } else {
        kernels::matvec_h(r.data(), rows, cols, x.data(), mid.data());
        const double sn = norm2(mid);
        if (sn == 0.0) return triple;
        triple.sigma = sn;
        triple.u = x;
        for (index_t j = 0; j < cols; ++j)
            triple.v[static_cast<std::size_t>(j)] =
                conj_of(mid[static_cast<std::size_t>(j)]) / sn;
    }
    return triple;
}

}  // namespace detail

// Dominant singular triple of a rearrangement matrix plus the relative
// residual of its best rank-one approximation,
// ‖R - sigma1 u v^T‖_F / sigma1, clamped to [0, 1].
template <typename T>
struct RankOneCertificate {
    double sigma1 = 0.0;
    Matrix<T> u, v;  // unit columns; R is approximated by sigma1 * u * v^T
    double relative_residual = 0.0;
};

template <typename T>
struct FactorPair {
    Matrix<T> b, c;
};

template <typename T>
struct NotFactorizable {
    RankOneCertificate<T> certificate;
};

template <typename T>
using FactorOutcome = std::variant<FactorPair<T>, NotFactorizable<T>>;

template <typename T>
struct NearestKron {
    FactorPair<T> factors;
    double residual;  // Frobenius norm of A - B kron C
};

// Scale/phase normalization shared by every operation that returns a
// FactorPair: vec(C) has unit norm and its largest-modulus entry is
// real and positive; B absorbs magnitude and phase.
template <typename T>
void canonicalize_pair(Matrix<T>& b, Matrix<T>& c) {
    const double cn = c.frobenius_norm();
    if (cn == 0.0) {
        b = Matrix<T>::zero(b.rows(), b.cols());
        return;
    }
    b *= T{cn};
    c *= T{1.0 / cn};

    const T* cd = c.data();
    index_t k = 0;
    double best = std::abs(cd[0]);
    for (index_t i = 1; i < c.size(); ++i) {
        const double m = std::abs(cd[i]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    const T phase = cd[k] / T{best};
    b *= phase;
    c *= conj_of(phase);
    c.data()[k] = T{best};  // exact, drops rotation dust
}

// Dominant singular triple of R and the relative Frobenius residual of
// the rank-one fit. tol is the caller's interpretation threshold
// (relative_residual <= tol reads as "rank one"); it is validated here
// but does not affect the certificate.
template <typename T>
RankOneCertificate<T> rank_one_test(const Matrix<T>& r, double tol = default_tol) {
    detail::require_nonneg_tol(tol);
    if (r.is_zero()) throw ZeroMatrixError("rank_one_test requires a nonzero matrix");

    const auto triple = detail::dominant_triple(r);
    RankOneCertificate<T> cert;
    cert.sigma1 = triple.sigma;
    cert.u = Matrix<T>::from_vec(triple.u, r.rows(), 1);
    cert.v = Matrix<T>::from_vec(triple.v, r.cols(), 1);

    Matrix<T> rank1(r.rows(), r.cols());
    for (index_t j = 0; j < r.cols(); ++j)
        for (index_t i = 0; i < r.rows(); ++i)
            rank1(i, j) = T{triple.sigma} * triple.u[static_cast<std::size_t>(i)] *
                          triple.v[static_cast<std::size_t>(j)];
    const double res = frobenius_distance(r, rank1) / cert.sigma1;
    cert.relative_residual = std::clamp(res, 0.0, 1.0);
    return cert;
}

// Exact factorization A = B kron C for the given partition. The zero
// matrix factors canonically as (0, 0). Otherwise the decision is the
// rank-one test on rearrange(A); on success the factors come from the
// pivot construction: C is the direction of the block of maximal
// Frobenius norm and each b_ij is the least-squares multiple of that
// block fitting A_ij.
template <typename T>
FactorOutcome<T> kron_factor(const Matrix<T>& a, const PartitionSpec& part,
                             double tol = default_tol) {
    detail::require_valid(part, a.rows(), a.cols());
    detail::require_nonneg_tol(tol);

    if (a.is_zero())
        return FactorPair<T>{Matrix<T>::zero(part.m, part.n),
                             Matrix<T>::zero(part.p, part.q)};

    const Matrix<T> r = rearrange(a, part);
    auto cert = rank_one_test(r, tol);
    if (cert.relative_residual > tol) return NotFactorizable<T>{std::move(cert)};

    // pivot row of R = vec of the block with maximal Frobenius norm
    const index_t nrows = r.rows(), ncols = r.cols();
    index_t piv = 0;
    double best = -1.0;
    for (index_t i = 0; i < nrows; ++i) {
        double s = 0.0;
        for (index_t k = 0; k < ncols; ++k) s += kernels::detail::abs_sq(r(i, k));
        if (s > best) {
            best = s;
            piv = i;
        }
    }

    std::vector<T> c(static_cast<std::size_t>(ncols));
    for (index_t k = 0; k < ncols; ++k) c[static_cast<std::size_t>(k)] = r(piv, k);

    std::vector<T> b(static_cast<std::size_t>(nrows));
    for (index_t i = 0; i < nrows; ++i) {
        T acc{};
        for (index_t k = 0; k < ncols; ++k)
            acc += r(i, k) * conj_of(c[static_cast<std::size_t>(k)]);
        b[static_cast<std::size_t>(i)] = acc / T{best};
    }

    FactorPair<T> pair{Matrix<T>::from_vec(b, part.m, part.n),
                       Matrix<T>::from_vec(c, part.p, part.q)};
    canonicalize_pair(pair.b, pair.c);
    return pair;
}

// Minimizer of ‖A - B kron C‖_F over all factor pairs of the given
// partition: vec(B) = sigma1 * u and vec(C) = v from the dominant
// singular triple of rearrange(A), then canonical scaling. residual is
// recomputed directly from the reconstruction.
template <typename T>
NearestKron<T> nearest_kron(const Matrix<T>& a, const PartitionSpec& part) {
    detail::require_valid(part, a.rows(), a.cols());
    if (a.is_zero()) throw ZeroMatrixError("nearest_kron requires a nonzero matrix");

    const Matrix<T> r = rearrange(a, part);
    const auto triple = detail::dominant_triple(r);

    std::vector<T> bvec = triple.u;
    detail::scale_vec(bvec, triple.sigma);
    NearestKron<T> out{FactorPair<T>{Matrix<T>::from_vec(bvec, part.m, part.n),
                                     Matrix<T>::from_vec(triple.v, part.p, part.q)},
                       0.0};
    canonicalize_pair(out.factors.b, out.factors.c);
    out.residual = frobenius_distance(a, kron(out.factors.b, out.factors.c));
    return out;
}

}  // namespace kronkit

#endif  // KRONKIT_FACTOR_HPP
