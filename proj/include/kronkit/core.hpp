//
// kronkit -- core structural operators: vec, Kronecker product,
// block vec (rearrangement) matrix and its inverse
//

#ifndef KRONKIT_CORE_HPP
#define KRONKIT_CORE_HPP

#include <string>

#include "kronkit/matrix.hpp"

namespace kronkit {

// Block partition of an (m*p) x (n*q) matrix into an m x n grid of
// p x q blocks.
struct PartitionSpec {
    index_t m, n, p, q;

    bool valid_for(index_t rows, index_t cols) const {
        return m > 0 && n > 0 && p > 0 && q > 0 && rows == m * p && cols == n * q;
    }
};

namespace detail {

inline void require_valid(const PartitionSpec& part, index_t rows, index_t cols) {
    if (!part.valid_for(rows, cols))
        throw InvalidPartitionError(
            "partition (m=" + std::to_string(part.m) + ", n=" + std::to_string(part.n) +
            ", p=" + std::to_string(part.p) + ", q=" + std::to_string(part.q) +
            ") does not tile a " + std::to_string(rows) + " x " + std::to_string(cols) +
            " matrix");
}

}  // namespace detail

// Stacks the columns of A into a single column vector.
template <typename T>
Matrix<T> vec(const Matrix<T>& a) {
    return Matrix<T>::from_vec(a.storage(), a.size(), 1);
}

// B kron C: block (i,j) equals b_ij * C.
template <typename T>
Matrix<T> kron(const Matrix<T>& b, const Matrix<T>& c) {
    Matrix<T> out(b.rows() * c.rows(), b.cols() * c.cols());
    kernels::kron(b.data(), b.rows(), b.cols(), c.data(), c.rows(), c.cols(), out.data());
    return out;
}

inline ComplexMatrix kron(const RealMatrix& b, const ComplexMatrix& c) {
    return kron(to_complex(b), c);
}

inline ComplexMatrix kron(const ComplexMatrix& b, const RealMatrix& c) {
    return kron(b, to_complex(c));
}

// Block vec matrix of A under the given partition: row j*m+i of the
// result is vec(A_ij)^T, blocks stacked block-column by block-column.
// Entry map: out(j*m + i, l*p + k) = a(i*p + k, j*q + l).
template <typename T>
Matrix<T> rearrange(const Matrix<T>& a, const PartitionSpec& part) {
    detail::require_valid(part, a.rows(), a.cols());
    Matrix<T> out(part.m * part.n, part.p * part.q);
    kernels::rearrange(a.data(), part.m, part.n, part.p, part.q, out.data());
    return out;
}

// Unique A with rearrange(A, part) == R.
template <typename T>
Matrix<T> unrearrange(const Matrix<T>& r, const PartitionSpec& part) {
    if (!(part.m > 0 && part.n > 0 && part.p > 0 && part.q > 0 &&
          r.rows() == part.m * part.n && r.cols() == part.p * part.q))
        throw InvalidPartitionError(
            "unrearrange: input must be (m*n) x (p*q) for partition (m=" +
            std::to_string(part.m) + ", n=" + std::to_string(part.n) +
            ", p=" + std::to_string(part.p) + ", q=" + std::to_string(part.q) + ")");
    Matrix<T> out(part.m * part.p, part.n * part.q);
    kernels::unrearrange(r.data(), part.m, part.n, part.p, part.q, out.data());
    return out;
}

}  // namespace kronkit

#endif  // KRONKIT_CORE_HPP
