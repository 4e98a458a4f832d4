//
// kronkit -- desk-scale eigensolvers
//
// Cyclic Jacobi for real symmetric matrices (complex Hermitian goes
// through the 2n x 2n real embedding), and a Wilkinson-shifted QR
// iteration for general spectra. Deterministic, dependency-free,
// intended for matrix orders in the low tens.
//

#ifndef KRONKIT_EIG_HPP
#define KRONKIT_EIG_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "kronkit/matrix.hpp"

namespace kronkit {

// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps,
// ascending order. The strictly lower triangle is ignored; the caller
// passes an (at least numerically) symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(RealMatrix s, int max_sweeps = 64) {
    if (!s.square()) throw DimensionError("jacobi_eigenvalues requires a square matrix");
    const index_t n = s.rows();
    const double scale = s.frobenius_norm();
    const double stop = 1e-15 * std::max(1.0, scale);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (index_t p = 0; p < n; ++p)
            for (index_t q = p + 1; q < n; ++q) off += 2.0 * s(p, q) * s(p, q);
        if (std::sqrt(off) <= stop) break;

        for (index_t p = 0; p < n; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                const double app = s(p, p), aqq = s(q, q);
                s(p, p) = app - t * apq;
                s(q, q) = aqq + t * apq;
                s(p, q) = 0.0;
                s(q, p) = 0.0;
                for (index_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = s(r, p), arq = s(r, q);
                    s(r, p) = arp - sn * (arq + tau * arp);
                    s(p, r) = s(r, p);
                    s(r, q) = arq + sn * (arp - tau * arq);
                    s(q, r) = s(r, q);
                }
            }
        }
    }

    std::vector<double> ev(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = s(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

namespace detail {

// [[Re H, -Im H], [Im H, Re H]]: real symmetric when H is Hermitian,
// spectrum of H with doubled multiplicities.
inline RealMatrix hermitian_embedding(const ComplexMatrix& h) {
    const index_t n = h.rows();
    RealMatrix e(2 * n, 2 * n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) {
            const double re = h(i, j).real();
            const double im = h(i, j).imag();
            e(i, j) = re;
            e(i + n, j + n) = re;
            e(i + n, j) = im;
            e(i, j + n) = -im;
        }
    return e;
}

}  // namespace detail

// Smallest and largest eigenvalue of the Hermitian part (M + M^H)/2.
inline std::pair<double, double> hermitian_eigenvalue_range(const RealMatrix& m) {
    if (!m.square()) throw DimensionError("eigenvalue range requires a square matrix");
    RealMatrix h(m.rows(), m.rows());
    for (index_t j = 0; j < m.rows(); ++j)
        for (index_t i = 0; i < m.rows(); ++i) h(i, j) = 0.5 * (m(i, j) + m(j, i));
    const auto ev = jacobi_eigenvalues(std::move(h));
    return {ev.front(), ev.back()};
}

inline std::pair<double, double> hermitian_eigenvalue_range(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("eigenvalue range requires a square matrix");
    ComplexMatrix h(m.rows(), m.rows());
    for (index_t j = 0; j < m.rows(); ++j)
        for (index_t i = 0; i < m.rows(); ++i)
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    const auto ev = jacobi_eigenvalues(detail::hermitian_embedding(h));
    return {ev.front(), ev.back()};
}

namespace detail {

// eigenvalues of [[a, b], [c, d]], cancellation-safe
inline std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex big =
        (std::abs(tr + disc) >= std::abs(tr - disc)) ? tr + disc : tr - disc;
    const Complex l1 = 0.5 * big;
    const Complex l2 = (l1 == Complex{}) ? Complex{} : det / l1;
    return {l1, l2};
}

// Givens rotation [[c, s], [-conj(s), c]] with real c zeroing g in (f, g).
inline void make_givens(Complex f, Complex g, double& c, Complex& s) {
    const double af = std::abs(f);
    const double ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = Complex{};
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double r = std::hypot(af, ag);
    c = af / r;
    s = (f / af) * (std::conj(g) / r);
}

inline ComplexMatrix hessenberg(ComplexMatrix h) {
    const index_t n = h.rows();
    for (index_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the subdiagonal
        double xnorm = 0.0;
        for (index_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        Complex alpha = h(k + 1, k);
        const double aa = std::abs(alpha);
        const Complex phase = (aa == 0.0) ? Complex{1.0} : alpha / aa;
        const Complex beta = -phase * xnorm;

        std::vector<Complex> v(static_cast<std::size_t>(n - k - 1));
        v[0] = alpha - beta;
        for (index_t i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i - k - 1)] = h(i, k);
        double vn = 0.0;
        for (const Complex& z : v) vn += std::norm(z);
        if (vn == 0.0) continue;

        // H <- P H P with P = I - 2 v v^H / (v^H v), restricted rows/cols
        for (index_t j = k; j < n; ++j) {
            Complex dot{};
            for (index_t i = k + 1; i < n; ++i)
                dot += std::conj(v[static_cast<std::size_t>(i - k - 1)]) * h(i, j);
            dot *= 2.0 / vn;
            for (index_t i = k + 1; i < n; ++i)
                h(i, j) -= dot * v[static_cast<std::size_t>(i - k - 1)];
        }
        for (index_t i = 0; i < n; ++i) {
            Complex dot{};
            for (index_t j = k + 1; j < n; ++j)
                dot += h(i, j) * v[static_cast<std::size_t>(j - k - 1)];
            dot *= 2.0 / vn;
            for (index_t j = k + 1; j < n; ++j)
                h(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j - k - 1)]);
        }
        h(k + 1, k) = beta;
        for (index_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }
    return h;
}

}  // namespace detail

// Eigenvalues of a general square matrix: Hessenberg reduction followed
// by Wilkinson-shifted QR with deflation. Order of the returned values
// is the deflation order (callers sort as needed).
inline std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("eigenvalues requires a square matrix");
    const index_t n = m.rows();
    std::vector<Complex> ev;
    ev.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        ev.push_back(m(0, 0));
        return ev;
    }

    ComplexMatrix h = detail::hessenberg(m);
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = eps * std::max(1.0, h.frobenius_norm());

    index_t hi = n - 1;
    int stalled = 0;
    long budget = 200 * n;
    while (hi > 0) {
        if (--budget < 0)
            throw ConvergenceError("QR iteration exceeded its iteration budget");

        // deflate negligible subdiagonals
        index_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            if (sub <= eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo))) ||
                sub <= tiny) {
                h(lo, lo - 1) = Complex{};
                break;
            }
            --lo;
        }

        if (lo == hi) {
            ev.push_back(h(hi, hi));
            --hi;
            stalled = 0;
            continue;
        }
        if (lo == hi - 1) {
            // decoupled 2x2 block, solved exactly
            const auto [l1, l2] =
                detail::eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            ev.push_back(l1);
            ev.push_back(l2);
            stalled = 0;
            if (lo == 0) break;
            hi = lo - 1;
            continue;
        }

        // Wilkinson shift from the trailing 2x2; exceptional shift when stalled
        Complex mu;
        if (++stalled % 12 == 0) {
            mu = h(hi, hi) + Complex{0.75 * std::abs(h(hi, hi - 1)), 0.0};
        } else {
            const auto [l1, l2] = detail::eig2(h(hi - 1, hi - 1), h(hi - 1, hi),
                                               h(hi, hi - 1), h(hi, hi));
            mu = (std::abs(l1 - h(hi, hi)) <= std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }

        // explicit shifted QR step on the active window
        for (index_t i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<double> cs(static_cast<std::size_t>(hi - lo));
        std::vector<Complex> ss(static_cast<std::size_t>(hi - lo));
        for (index_t k = lo; k < hi; ++k) {
            double c;
            Complex s;
            detail::make_givens(h(k, k), h(k + 1, k), c, s);
            cs[static_cast<std::size_t>(k - lo)] = c;
            ss[static_cast<std::size_t>(k - lo)] = s;
            for (index_t j = k; j <= hi; ++j) {
                const Complex t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = c * t1 + s * t2;
                h(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (index_t k = lo; k < hi; ++k) {
            const double c = cs[static_cast<std::size_t>(k - lo)];
            const Complex s = ss[static_cast<std::size_t>(k - lo)];
            const index_t top = lo;
            const index_t bot = std::min(k + 1, hi);
            for (index_t i = top; i <= bot; ++i) {
                const Complex t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = c * t1 + std::conj(s) * t2;
                h(i, k + 1) = -s * t1 + c * t2;
            }
        }
        for (index_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }

    if (static_cast<index_t>(ev.size()) < n) ev.push_back(h(0, 0));
    return ev;
}

inline std::vector<Complex> eigenvalues(const RealMatrix& m) {
    return eigenvalues(to_complex(m));
}

}  // namespace kronkit

#endif  // KRONKIT_EIG_HPP
