#pragma once

#include <optional>
#include <vector>

#include "mfk/linalg.hpp"
#include "mfk/polynomial.hpp"

namespace mfk {

// Dense matrix of polynomials over one variable list.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(std::size_t rows, std::size_t cols, VarListPtr vars);

    static PolyMatrix identity(std::size_t n, VarListPtr vars);
    static PolyMatrix scalar(std::size_t n, const Polynomial& p);
    static PolyMatrix zero(std::size_t rows, std::size_t cols, VarListPtr vars);
    static PolyMatrix from_constant(const QMat& q, VarListPtr vars);
    // [[a, b], [c, d]] block assembly; shapes must agree.
    static PolyMatrix block2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                               const PolyMatrix& d);
    static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const VarListPtr& vars() const { return vars_; }

    Polynomial& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator-() const;
    PolyMatrix scaled(const Rat& c) const;
    PolyMatrix transposed() const;
    bool operator==(const PolyMatrix& o) const;

    bool is_zero() const;
    std::uint32_t max_entry_degree() const;

    // Kronecker product; variable lists must already agree.
    PolyMatrix kron(const PolyMatrix& o) const;

    // Entrywise value at the origin.
    QMat eval_origin() const;
    bool invertible_at_origin() const;

    PolyMatrix lifted(const VarListPtr& target) const;
    PolyMatrix substituted(const VarListPtr& target, const std::vector<Polynomial>& images) const;
    PolyMatrix truncated(std::uint32_t max_degree) const;

    // Determinant by cofactor expansion with subset memoization; fine at the
    // small ranks this library works with.
    Polynomial determinant() const;

    // Exact polynomial inverse when det is a nonzero constant (unimodular
    // matrix); nullopt otherwise.
    std::optional<PolyMatrix> inverse_exact() const;

    // Power-series inverse truncated at the given total degree. Requires an
    // invertible constant term. `exact` is set when the result is the exact
    // polynomial inverse (the series terminated).
    PolyMatrix inverse_series(std::uint32_t max_degree, bool* exact = nullptr) const;

private:
    void check_shape(const PolyMatrix& o) const;

    std::size_t rows_, cols_;
    VarListPtr vars_;
    std::vector<Polynomial> a_;
};

}  // namespace mfk
