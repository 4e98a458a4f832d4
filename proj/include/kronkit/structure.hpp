//
// kronkit -- structural predicates and the Kronecker-square
// structure equivalences between B and B kron B
//

#ifndef KRONKIT_STRUCTURE_HPP
#define KRONKIT_STRUCTURE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "kronkit/core.hpp"
#include "kronkit/eig.hpp"
#include "kronkit/factor.hpp"

namespace kronkit {

struct PropertyCheck {
    bool holds = false;
    double deviation = std::numeric_limits<double>::infinity();
};

// Definitional deviations: each predicate records the Frobenius defect
// of its defining identity. A predicate holds when the defect is within
// tol * max(1, ‖M‖_F). Non-square input yields all-false entries.
struct PredicateSet {
    index_t rows = 0, cols = 0;
    bool square = false;
    double norm = 0.0;
    PropertyCheck symmetric, skew_symmetric;
    PropertyCheck hermitian, skew_hermitian;
    PropertyCheck positive_definite;  // Hermitian with lambda_min > tol
    PropertyCheck unitary;
    PropertyCheck real_orthogonal;    // real entries and M M^T = I
    PropertyCheck complex_orthogonal; // M M^T = I
};

template <typename T>
PredicateSet predicates(const Matrix<T>& m, double tol = default_tol) {
    detail::require_nonneg_tol(tol);
    PredicateSet ps;
    ps.rows = m.rows();
    ps.cols = m.cols();
    ps.square = m.square();
    ps.norm = m.frobenius_norm();
    if (!ps.square) return ps;

    const index_t n = m.rows();
    const double scale = tol * std::max(1.0, ps.norm);
    auto grade = [scale](double dev) { return PropertyCheck{dev <= scale, dev}; };

    const Matrix<T> mt = m.transpose();
    const Matrix<T> mh = m.conj_transpose();
    ps.symmetric = grade(frobenius_distance(m, mt));
    ps.skew_symmetric = grade((m + mt).frobenius_norm());
    ps.hermitian = grade(frobenius_distance(m, mh));
    ps.skew_hermitian = grade((m + mh).frobenius_norm());

    const Matrix<T> eye = Matrix<T>::identity(n);
    Matrix<T> gram(n, n);
    kernels::matmul_nh(m.data(), n, n, m.data(), n, gram.data());
    ps.unitary = grade(frobenius_distance(gram, eye));

    Matrix<T> prod_t(n, n);
    kernels::matmul_nt(m.data(), n, n, m.data(), n, prod_t.data());
    const double orth_dev = frobenius_distance(prod_t, eye);
    ps.complex_orthogonal = grade(orth_dev);

    double imag_defect = 0.0;
    if constexpr (is_complex_v<T>) {
        double s = 0.0;
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < n; ++i) s += m(i, j).imag() * m(i, j).imag();
        imag_defect = std::sqrt(s);
    }
    ps.real_orthogonal =
        PropertyCheck{imag_defect <= scale && orth_dev <= scale,
                      std::max(imag_defect, orth_dev)};

    if (ps.hermitian.holds) {
        const double lambda_min = hermitian_eigenvalue_range(m).first;
        ps.positive_definite =
            PropertyCheck{lambda_min > tol,
                          std::max(ps.hermitian.deviation,
                                   std::max(0.0, tol - lambda_min))};
    } else {
        ps.positive_definite = PropertyCheck{false, ps.hermitian.deviation};
    }
    return ps;
}

// One biconditional between a property of A = B kron B and a property
// of B (or a rotation of B). holds() is vacuous when not applicable.
struct EquivalenceCheck {
    char label = '?';
    const char* description = "";
    bool applicable = true;
    bool lhs = false;
    bool rhs = false;
    bool holds() const { return !applicable || lhs == rhs; }
};

struct StructureReport {
    PredicateSet a;          // kron(B, B)
    PredicateSet b;          // B
    PredicateSet b_phase;    // e^{i pi/4} B
    PredicateSet b_iscaled;  // i B
    bool b_negative_definite = false;
    bool b_is_zero = false;
    std::array<EquivalenceCheck, 8> items{};
    bool consistent = false;  // every applicable biconditional holds
};

// Evaluates the eight structure equivalences on a guaranteed-valid
// Kronecker square A = kron(B, B). A violation cannot happen
// mathematically; one in the report flags a tolerance artifact.
template <typename T>
StructureReport verify_square_structure(const Matrix<T>& b, double tol = default_tol) {
    detail::require_nonneg_tol(tol);
    StructureReport rep;
    rep.a = predicates(kron(b, b), tol);
    rep.b = predicates(b, tol);

    const ComplexMatrix bc = to_complex(b);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    rep.b_phase = predicates(Complex(inv_sqrt2, inv_sqrt2) * bc, tol);
    rep.b_iscaled = predicates(Complex(0.0, 1.0) * bc, tol);

    rep.b_is_zero = rep.b.norm <= tol;
    if (rep.b.hermitian.holds && b.square())
        rep.b_negative_definite = hermitian_eigenvalue_range(b).second < -tol;

    double b_imag_defect = 0.0;
    if constexpr (is_complex_v<T>) {
        double s = 0.0;
        for (index_t j = 0; j < b.cols(); ++j)
            for (index_t i = 0; i < b.rows(); ++i) s += b(i, j).imag() * b(i, j).imag();
        b_imag_defect = std::sqrt(s);
    }
    const bool b_real = b_imag_defect <= tol * std::max(1.0, rep.b.norm);

    auto& it = rep.items;
    it[0] = {'a', "A symmetric <-> B symmetric or skew-symmetric", true,
             rep.a.symmetric.holds,
             rep.b.symmetric.holds || rep.b.skew_symmetric.holds};
    it[1] = {'b', "A never skew-symmetric (nonzero B)", !rep.b_is_zero,
             rep.a.skew_symmetric.holds, false};
    it[2] = {'c', "A Hermitian <-> B Hermitian or skew-Hermitian", true,
             rep.a.hermitian.holds,
             rep.b.hermitian.holds || rep.b.skew_hermitian.holds};
    it[3] = {'d', "A Hermitian positive definite <-> B Hermitian definite", true,
             rep.a.positive_definite.holds,
             rep.b.positive_definite.holds || rep.b_negative_definite};
    it[4] = {'e', "A skew-Hermitian <-> e^{i pi/4} B Hermitian", true,
             rep.a.skew_hermitian.holds, rep.b_phase.hermitian.holds};
    it[5] = {'f', "A unitary <-> B unitary", true, rep.a.unitary.holds,
             rep.b.unitary.holds};
    it[6] = {'g', "A real orthogonal <-> B real orthogonal (B real)", b_real,
             rep.a.real_orthogonal.holds, rep.b.real_orthogonal.holds};
    it[7] = {'h', "A complex orthogonal <-> B or iB complex orthogonal", true,
             rep.a.complex_orthogonal.holds,
             rep.b.complex_orthogonal.holds || rep.b_iscaled.complex_orthogonal.holds};

    rep.consistent = true;
    for (const auto& item : rep.items) rep.consistent = rep.consistent && item.holds();
    return rep;
}

}  // namespace kronkit

#endif  // KRONKIT_STRUCTURE_HPP
