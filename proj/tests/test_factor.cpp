#include <doctest.h>

#include <cmath>
#include <variant>

#include "kronkit/factor.hpp"
#include "testutil.hpp"

using namespace kronkit;
using testutil::Rng;

namespace {

template <typename T>
index_t argmax_abs(const Matrix<T>& m) {
    index_t k = 0;
    double best = -1.0;
    for (index_t i = 0; i < m.size(); ++i)
        if (std::abs(m.data()[i]) > best) {
            best = std::abs(m.data()[i]);
            k = i;
        }
    return k;
}

template <typename T>
void check_canonical(const FactorPair<T>& pair) {
    CHECK(std::abs(vec(pair.c).frobenius_norm() - 1.0) <= 1e-12);
    const T top = pair.c.data()[argmax_abs(pair.c)];
    CHECK(real_part(top) > 0.0);
    CHECK(imag_part(top) == 0.0);
}

PartitionSpec random_partition(Rng& rng, index_t lo = 1, index_t hi = 4) {
    auto draw = [&] { return lo + static_cast<index_t>(rng() % (hi - lo + 1)); };
    return PartitionSpec{draw(), draw(), draw(), draw()};
}

}  // namespace

TEST_CASE("rank_one_test on the 2x4 fixture: Gram eigenvalues 21 and 6") {
    const RealMatrix r{{2, 2, 1, 0}, {3, 0, 0, 3}};
    const auto cert = rank_one_test(r);
    CHECK(cert.sigma1 == doctest::Approx(std::sqrt(21.0)).epsilon(1e-12));
    CHECK(cert.relative_residual ==
          doctest::Approx(std::sqrt(6.0 / 21.0)).epsilon(1e-10));
    CHECK(std::abs(cert.u.frobenius_norm() - 1.0) <= 1e-12);
    CHECK(std::abs(cert.v.frobenius_norm() - 1.0) <= 1e-12);

    const auto sv = testutil::oracle::singular_values(r);
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(std::sqrt(21.0)).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("rank_one_test on an outer product") {
    // rows (1,2)^T of (3,4): sigma1 = ‖(1,2)‖ ‖(3,4)‖ = 5 sqrt(5)
    const RealMatrix r{{3, 4}, {6, 8}};
    const auto cert = rank_one_test(r);
    CHECK(cert.sigma1 == doctest::Approx(5.0 * std::sqrt(5.0)).epsilon(1e-12));
    CHECK(cert.relative_residual <= 1e-14);
}

TEST_CASE("rank_one_test edge cases") {
    const auto cert = rank_one_test(RealMatrix{{1}});
    CHECK(cert.sigma1 == doctest::Approx(1.0));
    CHECK(cert.relative_residual == 0.0);

    CHECK_THROWS_AS(rank_one_test(RealMatrix::zero(2, 3)), ZeroMatrixError);
    CHECK_THROWS_AS(rank_one_test(RealMatrix{{1}}, -1.0), Error);
}

TEST_CASE("rank_one_test certificate matches the SVD oracle") {
    Rng rng(401);
    for (int trial = 0; trial < 50; ++trial) {
        const index_t r = 2 + static_cast<index_t>(rng() % 4);
        const index_t c = 2 + static_cast<index_t>(rng() % 4);
        auto run = [&](const auto& m) {
            const auto cert = rank_one_test(m);
            const auto sv = testutil::oracle::singular_values(m);
            CHECK(std::abs(cert.sigma1 - sv[0]) <= 1e-10 * sv[0]);
            const double tail = testutil::oracle::tail_residual(m);
            CHECK(std::abs(cert.relative_residual - std::min(1.0, tail / sv[0])) <= 1e-8);
            CHECK(cert.relative_residual >= 0.0);
            CHECK(cert.relative_residual <= 1.0);
        };
        run(testutil::random_real(rng, r, c));
        run(testutil::random_complex(rng, r, c));
    }
}

TEST_CASE("the 4x2 fixture is not a Kronecker product") {
    const RealMatrix a{{2, 1}, {2, 0}, {3, 0}, {0, 3}};
    const auto outcome = kron_factor(a, PartitionSpec{2, 1, 2, 2});
    REQUIRE(std::holds_alternative<NotFactorizable<double>>(outcome));
    const auto& nf = std::get<NotFactorizable<double>>(outcome);
    CHECK(nf.certificate.relative_residual ==
          doctest::Approx(std::sqrt(6.0 / 21.0)).epsilon(1e-10));
}

TEST_CASE("identity factors as a scaled identity pair") {
    const auto outcome = kron_factor(RealMatrix::identity(4), PartitionSpec{2, 2, 2, 2});
    REQUIRE(std::holds_alternative<FactorPair<double>>(outcome));
    const auto& pair = std::get<FactorPair<double>>(outcome);
    CHECK(testutil::rel_err(kron(pair.b, pair.c), RealMatrix::identity(4)) <= 1e-14);
    // both factors are multiples of I_2
    CHECK(std::abs(pair.c(0, 1)) <= 1e-14);
    CHECK(std::abs(pair.c(1, 0)) <= 1e-14);
    CHECK(pair.c(0, 0) == doctest::Approx(pair.c(1, 1)));
    check_canonical(pair);
}

TEST_CASE("hand-expanded product factors exactly") {
    const RealMatrix b{{1, 2}, {3, 4}};
    const RealMatrix c{{0, 1}, {1, 0}};
    const RealMatrix a = kron(b, c);
    const auto outcome = kron_factor(a, PartitionSpec{2, 2, 2, 2});
    REQUIRE(std::holds_alternative<FactorPair<double>>(outcome));
    const auto& pair = std::get<FactorPair<double>>(outcome);
    CHECK(frobenius_distance(a, kron(pair.b, pair.c)) <= 1e-12 * a.frobenius_norm());
    check_canonical(pair);
}

TEST_CASE("zero matrix factors as the canonical zero pair") {
    const auto outcome = kron_factor(RealMatrix::zero(4, 6), PartitionSpec{2, 3, 2, 2});
    REQUIRE(std::holds_alternative<FactorPair<double>>(outcome));
    const auto& pair = std::get<FactorPair<double>>(outcome);
    CHECK(pair.b.is_zero());
    CHECK(pair.c.is_zero());
    CHECK(pair.b.rows() == 2);
    CHECK(pair.c.rows() == 2);
    CHECK(pair.c.cols() == 2);
}

TEST_CASE("kron_factor validates inputs") {
    const RealMatrix a{{1, 2}, {3, 4}};
    CHECK_THROWS_AS(kron_factor(a, PartitionSpec{2, 2, 2, 2}), InvalidPartitionError);
    CHECK_THROWS_AS(kron_factor(a, PartitionSpec{2, 1, 1, 2}, -0.5), Error);
}

TEST_CASE("exact products round-trip at tol 1e-10") {
    Rng rng(402);
    for (int trial = 0; trial < 200; ++trial) {
        const auto part = random_partition(rng);
        auto run = [&](const auto& b, const auto& c) {
            using T = typename std::decay_t<decltype(b)>::scalar_type;
            const auto a = kron(b, c);
            if (a.is_zero()) return;
            const auto outcome = kron_factor(a, part, 1e-10);
            REQUIRE(std::holds_alternative<FactorPair<T>>(outcome));
            const auto& pair = std::get<FactorPair<T>>(outcome);
            CHECK(testutil::rel_err(kron(pair.b, pair.c), a) <= 1e-12);
            check_canonical(pair);
        };
        run(testutil::random_real(rng, part.m, part.n),
            testutil::random_real(rng, part.p, part.q));
        run(testutil::random_complex(rng, part.m, part.n),
            testutil::random_complex(rng, part.p, part.q));
    }
}

TEST_CASE("soundness: an accepted pair reconstructs within 2 tol") {
    Rng rng(403);
    for (const double noise : {1e-13, 1e-7, 1e-4}) {
        const double tol = noise * 100.0;
        for (int trial = 0; trial < 40; ++trial) {
            const auto part = random_partition(rng, 2, 3);
            const auto b = testutil::random_real(rng, part.m, part.n);
            const auto c = testutil::random_real(rng, part.p, part.q);
            RealMatrix a = kron(b, c);
            if (a.frobenius_norm() < 0.1) continue;
            RealMatrix e = testutil::random_real(rng, a.rows(), a.cols());
            e *= noise * a.frobenius_norm() / e.frobenius_norm();
            a = a + e;
            const auto outcome = kron_factor(a, part, tol);
            if (const auto* pair = std::get_if<FactorPair<double>>(&outcome)) {
                const double err =
                    frobenius_distance(a, kron(pair->b, pair->c)) / a.frobenius_norm();
                CHECK(err <= 2.0 * tol);
            }
        }
    }
}

TEST_CASE("scale canonicity: (tB, C/t) factors to the same canonical pair") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        const auto part = random_partition(rng, 2, 3);
        const auto b = testutil::random_complex(rng, part.m, part.n);
        const auto c = testutil::random_complex(rng, part.p, part.q);

        const auto base = kron_factor(kron(b, c), part, 1e-10);
        REQUIRE(std::holds_alternative<FactorPair<Complex>>(base));
        const auto& pair0 = std::get<FactorPair<Complex>>(base);

        for (const Complex t : {Complex(2.0, 0.0), Complex(-0.5, 0.0),
                                Complex(0.7 * std::cos(1.1), 0.7 * std::sin(1.1))}) {
            const auto scaled =
                kron_factor(kron(t * b, (1.0 / t) * c), part, 1e-10);
            REQUIRE(std::holds_alternative<FactorPair<Complex>>(scaled));
            const auto& pair1 = std::get<FactorPair<Complex>>(scaled);
            CHECK(frobenius_distance(pair0.b, pair1.b) <=
                  1e-10 * std::max(1.0, pair0.b.frobenius_norm()));
            CHECK(frobenius_distance(pair0.c, pair1.c) <= 1e-10);
        }
    }
}

TEST_CASE("generic matrices are rejected with a faithful certificate") {
    Rng rng(405);
    int rejected = 0;
    for (int trial = 0; trial < 100; ++trial) {
        PartitionSpec part = random_partition(rng, 1, 3);
        while (part.m * part.n < 2 || part.p * part.q < 2)
            part = random_partition(rng, 1, 3);
        const RealMatrix a =
            testutil::random_real(rng, part.m * part.p, part.n * part.q);
        const auto sv = testutil::oracle::singular_values(rearrange(a, part));
        if (sv[1] <= 1e-3 * sv[0]) continue;  // not generic enough, skip

        const auto outcome = kron_factor(a, part, 1e-10);
        REQUIRE(std::holds_alternative<NotFactorizable<double>>(outcome));
        ++rejected;
        const auto& cert = std::get<NotFactorizable<double>>(outcome).certificate;
        const double oracle_res =
            std::min(1.0, testutil::oracle::tail_residual(rearrange(a, part)) / sv[0]);
        CHECK(std::abs(cert.relative_residual - oracle_res) <= 1e-8);
    }
    CHECK(rejected >= 50);
}

TEST_CASE("magnitude-sum start vector null-space fixture still factors") {
    // rearrange gives [[1,-1],[1,-1]]; the magnitude-sum and all-ones
    // starts both lie in its null space
    const RealMatrix b{{1}, {1}};
    const RealMatrix c{{1, -1}};
    const RealMatrix a = kron(b, c);
    const auto outcome = kron_factor(a, PartitionSpec{2, 1, 1, 2}, 1e-10);
    REQUIRE(std::holds_alternative<FactorPair<double>>(outcome));
    const auto& pair = std::get<FactorPair<double>>(outcome);
    CHECK(testutil::rel_err(kron(pair.b, pair.c), a) <= 1e-12);
}

TEST_CASE("nearest_kron on an exact product is exact") {
    Rng rng(406);
    const auto b = testutil::random_real(rng, 2, 3);
    const auto c = testutil::random_real(rng, 2, 2);
    const auto a = kron(b, c);
    const auto nk = nearest_kron(a, PartitionSpec{2, 3, 2, 2});
    CHECK(nk.residual <= 1e-12 * a.frobenius_norm());
    CHECK(testutil::rel_err(kron(nk.factors.b, nk.factors.c), a) <= 1e-12);
    check_canonical(nk.factors);
}

TEST_CASE("nearest_kron residual on the 4x2 fixture is sqrt(6)") {
    const RealMatrix a{{2, 1}, {2, 0}, {3, 0}, {0, 3}};
    const auto nk = nearest_kron(a, PartitionSpec{2, 1, 2, 2});
    CHECK(nk.residual == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
}

TEST_CASE("nearest_kron matches the full-SVD tail over all partitions") {
    Rng rng(407);
    for (int trial = 0; trial < 10; ++trial) {
        const RealMatrix a = testutil::random_real(rng, 6, 6);
        for (const auto& [m, p] : {std::pair<index_t, index_t>{1, 6}, {2, 3}, {3, 2}, {6, 1}})
            for (const auto& [n, q] :
                 {std::pair<index_t, index_t>{1, 6}, {2, 3}, {3, 2}, {6, 1}}) {
                const PartitionSpec part{m, n, p, q};
                const auto nk = nearest_kron(a, part);
                const double direct =
                    frobenius_distance(a, kron(nk.factors.b, nk.factors.c));
                CHECK(std::abs(nk.residual - direct) <= 1e-10);
                const double tail = testutil::oracle::tail_residual(rearrange(a, part));
                CHECK(std::abs(nk.residual - tail) <= 1e-8);
            }
    }
}

TEST_CASE("nearest_kron beats random factor perturbations") {
    Rng rng(408);
    for (int trial = 0; trial < 10; ++trial) {
        const RealMatrix a = testutil::random_real(rng, 4, 4);
        const PartitionSpec part{2, 2, 2, 2};
        const auto nk = nearest_kron(a, part);
        for (int k = 0; k < 100; ++k) {
            RealMatrix db = testutil::random_real(rng, 2, 2);
            RealMatrix dc = testutil::random_real(rng, 2, 2);
            db *= 1e-3 / db.frobenius_norm();
            dc *= 1e-3 / dc.frobenius_norm();
            const double perturbed =
                frobenius_distance(a, kron(nk.factors.b + db, nk.factors.c + dc));
            CHECK(perturbed >= nk.residual - 1e-12);
        }
    }
}

TEST_CASE("nearest_kron rejects the zero matrix") {
    CHECK_THROWS_AS(nearest_kron(RealMatrix::zero(4, 4), PartitionSpec{2, 2, 2, 2}),
                    ZeroMatrixError);
}
