//
// kronkit -- dense kernels, column-major storage
//
// Every kernel exists twice: kernels::serial is the reference
// implementation, kernels::par the OpenMP one. The unprefixed wrappers
// dispatch on a work estimate. Both variants perform identical
// per-entry arithmetic (each output entry is produced by one serial
// reduction), so results are bit-identical regardless of thread count.
//

#ifndef KRONKIT_KERNELS_HPP
#define KRONKIT_KERNELS_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace kronkit {

using index_t = std::int64_t;

namespace kernels {

#if defined(_OPENMP)
inline constexpr bool openmp_enabled = true;
#else
inline constexpr bool openmp_enabled = false;
#endif

// Minimum work (output entries, or fused multiply-adds for products)
// before the parallel variant is worth dispatching to.
inline constexpr index_t parallel_min_work = index_t(1) << 15;

namespace detail {

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(const std::complex<double>& z) { return std::conj(z); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const std::complex<double>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// serial reference kernels
// ---------------------------------------------------------------------------

namespace serial {

// out = B kron C, B is mb x nb, C is pc x qc, out is (mb*pc) x (nb*qc).
template <typename T>
void kron(const T* b, index_t mb, index_t nb, const T* c, index_t pc, index_t qc, T* out) {
    const index_t out_rows = mb * pc;
    for (index_t col = 0; col < nb * qc; ++col) {
        const index_t jb = col / qc;
        const index_t jc = col % qc;
        T* outcol = out + col * out_rows;
        const T* ccol = c + jc * pc;
        for (index_t ib = 0; ib < mb; ++ib) {
            const T scale = b[ib + jb * mb];
            T* dst = outcol + ib * pc;
            for (index_t ic = 0; ic < pc; ++ic) dst[ic] = scale * ccol[ic];
        }
    }
}

// Block vec matrix: r(j*m + i, l*p + k) = a(i*p + k, j*q + l).
// a is (m*p) x (n*q), r is (m*n) x (p*q).
template <typename T>
void rearrange(const T* a, index_t m, index_t n, index_t p, index_t q, T* r) {
    const index_t a_rows = m * p;
    const index_t r_rows = m * n;
    for (index_t col = 0; col < p * q; ++col) {
        const index_t l = col / p;
        const index_t k = col % p;
        T* rcol = r + col * r_rows;
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < m; ++i)
                rcol[j * m + i] = a[(i * p + k) + (j * q + l) * a_rows];
    }
}

// Inverse of rearrange: a(i*p + k, j*q + l) = r(j*m + i, l*p + k).
template <typename T>
void unrearrange(const T* r, index_t m, index_t n, index_t p, index_t q, T* a) {
    const index_t a_rows = m * p;
    const index_t r_rows = m * n;
    for (index_t col = 0; col < n * q; ++col) {
        const index_t j = col / q;
        const index_t l = col % q;
        T* acol = a + col * a_rows;
        for (index_t i = 0; i < m; ++i)
            for (index_t k = 0; k < p; ++k)
                acol[i * p + k] = r[(j * m + i) + (l * p + k) * r_rows];
    }
}

// out = A * B, A is ra x ca, B is ca x cb.
template <typename T>
void matmul(const T* a, index_t ra, index_t ca, const T* b, index_t cb, T* out) {
    for (index_t j = 0; j < cb; ++j) {
        const T* bcol = b + j * ca;
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k) acc += a[i + k * ra] * bcol[k];
            ocol[i] = acc;
        }
    }
}

// out = A * B^T, A is ra x ca, B is rb x ca, out is ra x rb.
template <typename T>
void matmul_nt(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
    for (index_t j = 0; j < rb; ++j) {
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k) acc += a[i + k * ra] * b[j + k * rb];
            ocol[i] = acc;
        }
    }
}

// out = A * B^H, A is ra x ca, B is rb x ca, out is ra x rb.
template <typename T>
void matmul_nh(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
    for (index_t j = 0; j < rb; ++j) {
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k)
                acc += a[i + k * ra] * detail::conj_of(b[j + k * rb]);
            ocol[i] = acc;
        }
    }
}

// y = A x, A is r x c.
template <typename T>
void matvec(const T* a, index_t r, index_t c, const T* x, T* y) {
    for (index_t i = 0; i < r; ++i) {
        T acc{};
        for (index_t k = 0; k < c; ++k) acc += a[i + k * r] * x[k];
        y[i] = acc;
    }
}

// y = A^H x, A is r x c, y has length c.
template <typename T>
void matvec_h(const T* a, index_t r, index_t c, const T* x, T* y) {
    for (index_t j = 0; j < c; ++j) {
        const T* acol = a + j * r;
        T acc{};
        for (index_t k = 0; k < r; ++k) acc += detail::conj_of(acol[k]) * x[k];
        y[j] = acc;
    }
}

// out = alpha*a + beta*b, elementwise over n entries.
template <typename T>
void add_scaled(T alpha, const T* a, T beta, const T* b, index_t n, T* out) {
    for (index_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
}

// Squared Frobenius norm. Column partial sums are accumulated in column
// order so the serial and parallel variants agree bitwise.
template <typename T>
double frobenius_sq(const T* a, index_t r, index_t c) {
    std::vector<double> partial(static_cast<std::size_t>(c), 0.0);
    for (index_t j = 0; j < c; ++j) {
        const T* acol = a + j * r;
        double s = 0.0;
        for (index_t i = 0; i < r; ++i) s += detail::abs_sq(acol[i]);
        partial[static_cast<std::size_t>(j)] = s;
    }
    double total = 0.0;
    for (index_t j = 0; j < c; ++j) total += partial[static_cast<std::size_t>(j)];
    return total;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels
// ---------------------------------------------------------------------------

namespace par {

template <typename T>
void kron(const T* b, index_t mb, index_t nb, const T* c, index_t pc, index_t qc, T* out) {
    const index_t out_rows = mb * pc;
    const index_t out_cols = nb * qc;
#pragma omp parallel for schedule(static)
    for (index_t col = 0; col < out_cols; ++col) {
        const index_t jb = col / qc;
        const index_t jc = col % qc;
        T* outcol = out + col * out_rows;
        const T* ccol = c + jc * pc;
        for (index_t ib = 0; ib < mb; ++ib) {
            const T scale = b[ib + jb * mb];
            T* dst = outcol + ib * pc;
            for (index_t ic = 0; ic < pc; ++ic) dst[ic] = scale * ccol[ic];
        }
    }
}

template <typename T>
void rearrange(const T* a, index_t m, index_t n, index_t p, index_t q, T* r) {
    const index_t a_rows = m * p;
    const index_t r_rows = m * n;
    const index_t r_cols = p * q;
#pragma omp parallel for schedule(static)
    for (index_t col = 0; col < r_cols; ++col) {
        const index_t l = col / p;
        const index_t k = col % p;
        T* rcol = r + col * r_rows;
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < m; ++i)
                rcol[j * m + i] = a[(i * p + k) + (j * q + l) * a_rows];
    }
}

template <typename T>
void unrearrange(const T* r, index_t m, index_t n, index_t p, index_t q, T* a) {
    const index_t a_rows = m * p;
    const index_t r_rows = m * n;
    const index_t a_cols = n * q;
#pragma omp parallel for schedule(static)
    for (index_t col = 0; col < a_cols; ++col) {
        const index_t j = col / q;
        const index_t l = col % q;
        T* acol = a + col * a_rows;
        for (index_t i = 0; i < m; ++i)
            for (index_t k = 0; k < p; ++k)
                acol[i * p + k] = r[(j * m + i) + (l * p + k) * r_rows];
    }
}

template <typename T>
void matmul(const T* a, index_t ra, index_t ca, const T* b, index_t cb, T* out) {
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < cb; ++j) {
        const T* bcol = b + j * ca;
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k) acc += a[i + k * ra] * bcol[k];
            ocol[i] = acc;
        }
    }
}

template <typename T>
void matmul_nt(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < rb; ++j) {
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k) acc += a[i + k * ra] * b[j + k * rb];
            ocol[i] = acc;
        }
    }
}

template <typename T>
void matmul_nh(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < rb; ++j) {
        T* ocol = out + j * ra;
        for (index_t i = 0; i < ra; ++i) {
            T acc{};
            for (index_t k = 0; k < ca; ++k)
                acc += a[i + k * ra] * detail::conj_of(b[j + k * rb]);
            ocol[i] = acc;
        }
    }
}

template <typename T>
void matvec(const T* a, index_t r, index_t c, const T* x, T* y) {
#pragma omp parallel for schedule(static)
    for (index_t i = 0; i < r; ++i) {
        T acc{};
        for (index_t k = 0; k < c; ++k) acc += a[i + k * r] * x[k];
        y[i] = acc;
    }
}

template <typename T>
void matvec_h(const T* a, index_t r, index_t c, const T* x, T* y) {
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < c; ++j) {
        const T* acol = a + j * r;
        T acc{};
        for (index_t k = 0; k < r; ++k) acc += detail::conj_of(acol[k]) * x[k];
        y[j] = acc;
    }
}

template <typename T>
void add_scaled(T alpha, const T* a, T beta, const T* b, index_t n, T* out) {
#pragma omp parallel for schedule(static)
    for (index_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
}

template <typename T>
double frobenius_sq(const T* a, index_t r, index_t c) {
    std::vector<double> partial(static_cast<std::size_t>(c), 0.0);
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < c; ++j) {
        const T* acol = a + j * r;
        double s = 0.0;
        for (index_t i = 0; i < r; ++i) s += detail::abs_sq(acol[i]);
        partial[static_cast<std::size_t>(j)] = s;
    }
    // Ordered accumulation keeps the result independent of thread count.
    double total = 0.0;
    for (index_t j = 0; j < c; ++j) total += partial[static_cast<std::size_t>(j)];
    return total;
}

}  // namespace par

// ---------------------------------------------------------------------------
// dispatching wrappers
// ---------------------------------------------------------------------------

inline bool use_parallel(index_t work) {
    return openmp_enabled && work >= parallel_min_work;
}

template <typename T>
void kron(const T* b, index_t mb, index_t nb, const T* c, index_t pc, index_t qc, T* out) {
    if (use_parallel(mb * nb * pc * qc))
        par::kron(b, mb, nb, c, pc, qc, out);
    else
        serial::kron(b, mb, nb, c, pc, qc, out);
}

template <typename T>
void rearrange(const T* a, index_t m, index_t n, index_t p, index_t q, T* r) {
    if (use_parallel(m * n * p * q))
        par::rearrange(a, m, n, p, q, r);
    else
        serial::rearrange(a, m, n, p, q, r);
}

template <typename T>
void unrearrange(const T* r, index_t m, index_t n, index_t p, index_t q, T* a) {
    if (use_parallel(m * n * p * q))
        par::unrearrange(r, m, n, p, q, a);
    else
        serial::unrearrange(r, m, n, p, q, a);
}

template <typename T>
void matmul(const T* a, index_t ra, index_t ca, const T* b, index_t cb, T* out) {
    if (use_parallel(ra * ca * cb))
        par::matmul(a, ra, ca, b, cb, out);
    else
        serial::matmul(a, ra, ca, b, cb, out);
}

template <typename T>
void matmul_nt(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
    if (use_parallel(ra * ca * rb))
        par::matmul_nt(a, ra, ca, b, rb, out);
    else
        serial::matmul_nt(a, ra, ca, b, rb, out);
}

template <typename T>
void matmul_nh(const T* a, index_t ra, index_t ca, const T* b, index_t rb, T* out) {
    if (use_parallel(ra * ca * rb))
        par::matmul_nh(a, ra, ca, b, rb, out);
    else
        serial::matmul_nh(a, ra, ca, b, rb, out);
}

template <typename T>
void matvec(const T* a, index_t r, index_t c, const T* x, T* y) {
    if (use_parallel(r * c))
        par::matvec(a, r, c, x, y);
    else
        serial::matvec(a, r, c, x, y);
}

template <typename T>
void matvec_h(const T* a, index_t r, index_t c, const T* x, T* y) {
    if (use_parallel(r * c))
        par::matvec_h(a, r, c, x, y);
    else
        serial::matvec_h(a, r, c, x, y);
}

template <typename T>
void add_scaled(T alpha, const T* a, T beta, const T* b, index_t n, T* out) {
    if (use_parallel(n))
        par::add_scaled(alpha, a, beta, b, n, out);
    else
        serial::add_scaled(alpha, a, beta, b, n, out);
}

template <typename T>
double frobenius_sq(const T* a, index_t r, index_t c) {
    if (use_parallel(r * c)) return par::frobenius_sq(a, r, c);
    return serial::frobenius_sq(a, r, c);
}

}  // namespace kernels
}  // namespace kronkit

#endif  // KRONKIT_KERNELS_HPP
