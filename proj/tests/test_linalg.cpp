#include <doctest.h>

#include "mfk/budget.hpp"
#include "mfk/linalg.hpp"
#include "test_support.hpp"

using namespace mfk;
using mfk_test::Rng;

namespace {

QMat random_mat(Rng& rng, std::size_t n, std::size_t m, int lo = -5, int hi = 5) {
    QMat a(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a.at(i, j) = rng.uniform(lo, hi);
    return a;
}

std::vector<SparseVec> to_sparse_rows(const QMat& a) {
    std::vector<SparseVec> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!is_zero(a.at(i, j)))
                rows[i].nz.emplace_back(static_cast<int>(j), a.at(i, j));
    return rows;
}

}  // namespace

TEST_CASE("kernel basis on the documented examples") {
    CHECK(kernel_basis(QMat::identity(3)).empty());
    QMat z(2, 3);
    CHECK(kernel_basis(z).size() == 3);
    QMat ones(2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    auto kb = kernel_basis(ones);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0][0] == -kb[0][1]);
}

TEST_CASE("rank on the documented examples") {
    CHECK(rank(QMat::identity(4)) == 4);
    CHECK(rank(QMat(3, 5)) == 0);
    QMat a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 0) = 2;
    a.at(1, 1) = 4;
    CHECK(rank(a) == 1);
}

TEST_CASE("solve on the documented examples") {
    QMat id = QMat::identity(3);
    std::vector<Rat> v{1, Rat(2, 3), -5};
    CHECK(*solve(id, v) == v);

    QMat row(1, 2);
    row.at(0, 0) = row.at(0, 1) = 1;
    auto x = solve(row, {Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] + (*x)[1] == 2);

    QMat col(2, 1);
    col.at(0, 0) = 1;
    CHECK(!solve(col, {Rat(0), Rat(1)}).has_value());
    CHECK_THROWS_AS(solve(col, {Rat(0)}), DimensionError);
}

TEST_CASE("kernel vectors, rank symmetry and solve substitution on random matrices") {
    Rng rng(4001);
    for (int iter = 0; iter < 20; ++iter) {
        QMat a = random_mat(rng, 4 + rng.uniform(0, 3), 4 + rng.uniform(0, 4));
        CHECK(rank(a) == rank(a.transposed()));
        auto kb = kernel_basis(a);
        CHECK(kb.size() + rank(a) == a.cols());
        for (const auto& v : kb)
            for (std::size_t i = 0; i < a.rows(); ++i) {
                Rat acc(0);
                for (std::size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * v[j];
                CHECK(is_zero(acc));
            }
        std::vector<Rat> xs(a.cols());
        for (auto& x : xs) x = rng.uniform(-3, 3);
        std::vector<Rat> rhs(a.rows(), Rat(0));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) rhs[i] += a.at(i, j) * xs[j];
        auto sol = solve(a, rhs);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Rat acc(0);
            for (std::size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * (*sol)[j];
            CHECK(acc == rhs[i]);
        }
    }
}

TEST_CASE("parallel elimination matches the serial reference exactly") {
    Rng rng(4002);
    for (int iter = 0; iter < 8; ++iter) {
        QMat a = random_mat(rng, 20, 26);
        EchelonForm s = rref_serial(a);
        EchelonForm p = rref_parallel(a);
        CHECK(s.pivot_cols == p.pivot_cols);
        CHECK(s.mat == p.mat);
    }
}

TEST_CASE("sparse eliminator agrees with dense rank and kernels") {
    Rng rng(4003);
    for (int iter = 0; iter < 10; ++iter) {
        QMat a = random_mat(rng, 12, 18, -2, 2);
        // Thin it out.
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (rng.uniform(0, 3)) a.at(i, j) = 0;
        auto rows = to_sparse_rows(a);
        CHECK(sparse_rank(rows, 18) == static_cast<int>(rank(a)));

        auto kb = sparse_kernel_basis(rows, 18);
        CHECK(kb.size() == kernel_basis(a).size());
        for (const auto& kv : kb) {
            auto dense = sparse_to_dense(kv, 18);
            for (std::size_t i = 0; i < a.rows(); ++i) {
                Rat acc(0);
                for (std::size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * dense[j];
                CHECK(is_zero(acc));
            }
        }

        // Serial and parallel sparse paths produce the same echelon rows.
        SparseEliminator es(18, false), ep(18, true);
        es.add_rows(rows);
        ep.add_rows(rows);
        CHECK(es.rows() == ep.rows());
        CHECK(es.leading_cols() == ep.leading_cols());
    }
}

TEST_CASE("incremental insert matches batch elimination rank") {
    Rng rng(4004);
    QMat a = random_mat(rng, 10, 14, -3, 3);
    auto rows = to_sparse_rows(a);
    SparseEliminator batch(14);
    batch.add_rows(rows);
    SparseEliminator incr(14);
    int grew = 0;
    for (const auto& r : rows)
        if (incr.insert(r)) ++grew;
    CHECK(grew == batch.rank());
    CHECK(incr.rank() == batch.rank());
}

TEST_CASE("tagged row space expresses vectors over representatives") {
    // Plane spanned by e0 (coboundary) and reps f1 = e1, f2 = e0 + e2.
    TaggedRowSpace space(3, 2);
    SparseVec e0;
    e0.nz = {{0, Rat(1)}};
    space.add(e0, SparseVec{});
    SparseVec f1;
    f1.nz = {{1, Rat(1)}};
    SparseVec tag1;
    tag1.nz = {{0, Rat(1)}};
    space.add(f1, tag1);
    SparseVec f2;
    f2.nz = {{0, Rat(1)}, {2, Rat(1)}};
    SparseVec tag2;
    tag2.nz = {{1, Rat(1)}};
    space.add(f2, tag2);

    // v = 3 f1 - 2 f2 + 5 e0 reduces to zero with coefficients (3, -2).
    SparseVec v;
    v.nz = {{0, Rat(3)}, {1, Rat(3)}, {2, Rat(-2)}};
    auto [res, tag] = space.reduce(v);
    CHECK(res.empty());
    auto coords = sparse_to_dense(tag, 2);
    CHECK(coords[0] == -3);
    CHECK(coords[1] == 2);
}

TEST_CASE("budget interrupts long eliminations") {
    Rng rng(4005);
    QMat a = random_mat(rng, 30, 30);
    BudgetScope scope(5);
    CHECK_THROWS_AS(rank(a), BudgetExhaustedError);
}
