//
// kronkit -- dense matrix value type over double / complex<double>
//

#ifndef KRONKIT_MATRIX_HPP
#define KRONKIT_MATRIX_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "kronkit/errors.hpp"
#include "kronkit/kernels.hpp"

namespace kronkit {

using Complex = std::complex<double>;

enum class Field { real, cplx };

template <typename T>
struct is_complex : std::false_type {};
template <typename U>
struct is_complex<std::complex<U>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename T>
inline constexpr Field field_of_v = is_complex_v<T> ? Field::cplx : Field::real;

inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }
inline double imag_part(double) { return 0.0; }
inline double imag_part(const Complex& z) { return z.imag(); }

// Column-major dense matrix. Value semantics; entries are doubles or
// complex<double>. All structural operators in this library are pure
// functions of Matrix values.
template <typename T>
class Matrix {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, Complex>,
                  "Matrix supports double and complex<double> scalars");

public:
    using scalar_type = T;

    Matrix() : rows_(0), cols_(0) {}

    Matrix(index_t rows, index_t cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), T{}) {
        if (rows <= 0 || cols <= 0)
            throw DimensionError("matrix dimensions must be positive");
    }

    // Row-wise brace construction, for small literals in tests and tools.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<index_t>(rows.size());
        cols_ = rows_ > 0 ? static_cast<index_t>(rows.begin()->size()) : 0;
        if (rows_ <= 0 || cols_ <= 0)
            throw DimensionError("matrix dimensions must be positive");
        data_.assign(static_cast<std::size_t>(rows_ * cols_), T{});
        index_t i = 0;
        for (const auto& row : rows) {
            if (static_cast<index_t>(row.size()) != cols_)
                throw DimensionError("ragged initializer rows");
            index_t j = 0;
            for (const T& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static Matrix zero(index_t rows, index_t cols) { return Matrix(rows, cols); }

    static Matrix identity(index_t n) {
        Matrix I(n, n);
        for (index_t i = 0; i < n; ++i) I(i, i) = T{1};
        return I;
    }

    // Column-major reshape of a flat vector (the inverse of vec).
    static Matrix from_vec(const std::vector<T>& v, index_t rows, index_t cols) {
        if (static_cast<index_t>(v.size()) != rows * cols)
            throw DimensionError("from_vec: size mismatch");
        Matrix out(rows, cols);
        out.data_ = v;
        return out;
    }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    index_t size() const { return rows_ * cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(index_t i, index_t j) {
        return data_[static_cast<std::size_t>(i + j * rows_)];
    }
    const T& operator()(index_t i, index_t j) const {
        return data_[static_cast<std::size_t>(i + j * rows_)];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    const std::vector<T>& storage() const { return data_; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (index_t j = 0; j < cols_; ++j)
            for (index_t i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix conj_transpose() const {
        Matrix out(cols_, rows_);
        for (index_t j = 0; j < cols_; ++j)
            for (index_t i = 0; i < rows_; ++i) out(j, i) = conj_of((*this)(i, j));
        return out;
    }

    T trace() const {
        if (!square()) throw DimensionError("trace requires a square matrix");
        T t{};
        for (index_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        return std::sqrt(kernels::frobenius_sq(data(), rows_, cols_));
    }

    bool is_zero() const {
        for (const T& v : data_)
            if (v != T{}) return false;
        return true;
    }

    Matrix& operator*=(T s) {
        for (T& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator*(T s, Matrix a) {
        a *= s;
        return a;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "+");
        Matrix out(a.rows_, a.cols_);
        kernels::add_scaled(T{1}, a.data(), T{1}, b.data(), a.size(), out.data());
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "-");
        Matrix out(a.rows_, a.cols_);
        kernels::add_scaled(T{1}, a.data(), T{-1}, b.data(), a.size(), out.data());
        return out;
    }

    friend Matrix operator-(Matrix a) {
        a *= T{-1};
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matmul: inner dimensions differ");
        Matrix out(a.rows_, b.cols_);
        kernels::matmul(a.data(), a.rows_, a.cols_, b.data(), b.cols_, out.data());
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionError(std::string("shape mismatch in operator") + op);
    }

    index_t rows_, cols_;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

inline ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) out(i, j) = Complex(a(i, j), 0.0);
    return out;
}

inline const ComplexMatrix& to_complex(const ComplexMatrix& a) { return a; }

inline Field field_of(const AnyMatrix& a) {
    return std::holds_alternative<RealMatrix>(a) ? Field::real : Field::cplx;
}

// Frobenius distance, used all over the test and structure code.
template <typename T>
double frobenius_distance(const Matrix<T>& a, const Matrix<T>& b) {
    return (a - b).frobenius_norm();
}

}  // namespace kronkit

#endif  // KRONKIT_MATRIX_HPP
