#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mfk/errors.hpp"
#include "mfk/rational.hpp"

namespace mfk {

// Dense rational matrix, row major.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static QMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QMat transposed() const;
    QMat operator*(const QMat& o) const;
    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Reduced row echelon form: unit pivots, zeros above and below.
struct EchelonForm {
    QMat mat;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

// Serial reference implementation (textbook fraction-free sweep). Kept as
// the oracle the parallel kernel is tested against.
EchelonForm rref_serial(QMat m);
// Same algorithm with OpenMP row updates; output is identical entry for
// entry to the serial form.
EchelonForm rref_parallel(QMat m);
// Default entry point (parallel kernel).
EchelonForm rref(QMat m);

std::size_t rank(const QMat& m);
// Exact basis of the right kernel; empty iff the matrix is injective.
std::vector<std::vector<Rat>> kernel_basis(const QMat& m);
// One exact solution of m x = rhs, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve(const QMat& m, const std::vector<Rat>& rhs);

// ---------------------------------------------------------------------------
// Sparse elimination. The coefficient systems assembled by the homotopy and
// deformation solvers are large and very sparse; this is their workhorse.
// ---------------------------------------------------------------------------

// Sparse vector with entries sorted by column.
struct SparseVec {
    std::vector<std::pair<int, Rat>> nz;

    bool empty() const { return nz.empty(); }
    int leading() const { return nz.front().first; }
    const Rat* find(int col) const;
    void axpy(const Rat& c, const SparseVec& other);  // *this += c * other
    bool operator==(const SparseVec&) const = default;
};

SparseVec sparse_from_dense(const std::vector<Rat>& v);
std::vector<Rat> sparse_to_dense(const SparseVec& v, int ncols);

// Incremental row-space eliminator. Holds an echelon set of rows with
// distinct leading columns; supports batch elimination (OpenMP across row
// updates) and one-at-a-time inserts.
class SparseEliminator {
public:
    explicit SparseEliminator(int ncols, bool parallel = true);

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Eliminates a batch of rows into the echelon set.
    void add_rows(std::vector<SparseVec> rows);
    // Residue of v modulo the current row space.
    SparseVec reduce(SparseVec v) const;
    // Reduces and keeps v if independent; true iff the rank grew.
    bool insert(SparseVec v);

    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& leading_cols() const { return leading_; }

private:
    void store(SparseVec v);

    int ncols_;
    bool parallel_;
    std::vector<SparseVec> rows_;
    std::vector<int> leading_;
    std::vector<int> pivot_row_of_col_;  // -1 when the column is free
};

// Rank of a sparse row collection.
int sparse_rank(std::vector<SparseVec> rows, int ncols, bool parallel = true);
// Exact right-kernel basis of the row collection seen as a matrix.
std::vector<SparseVec> sparse_kernel_basis(std::vector<SparseVec> rows, int ncols,
                                           bool parallel = true);

// Row-space eliminator that carries an auxiliary tag block, used to express
// reduced vectors as combinations of designated representatives.
class TaggedRowSpace {
public:
    TaggedRowSpace(int ncols, int ntags);

    void add(SparseVec v, SparseVec tag);
    // Reduces v; returns {residue, accumulated tag}. When the residue is
    // empty, v equals a combination of stored rows and -tag gives its
    // coefficients over the tagged generators.
    std::pair<SparseVec, SparseVec> reduce(SparseVec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    int ncols_;
    int ntags_;
    std::vector<std::pair<SparseVec, SparseVec>> rows_;
    std::vector<int> pivot_row_of_col_;
};

}  // namespace mfk
