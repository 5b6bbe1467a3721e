#include "mfk/polymatrix.hpp"

#include <map>

namespace mfk {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, VarListPtr vars)
    : rows_(rows), cols_(cols), vars_(std::move(vars)) {
    a_.assign(rows_ * cols_, Polynomial::zero(vars_));
}

PolyMatrix PolyMatrix::identity(std::size_t n, VarListPtr vars) {
    return scalar(n, Polynomial::constant(std::move(vars), 1));
}

PolyMatrix PolyMatrix::scalar(std::size_t n, const Polynomial& p) {
    PolyMatrix m(n, n, p.vars());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = p;
    return m;
}

PolyMatrix PolyMatrix::zero(std::size_t rows, std::size_t cols, VarListPtr vars) {
    return PolyMatrix(rows, cols, std::move(vars));
}

PolyMatrix PolyMatrix::from_constant(const QMat& q, VarListPtr vars) {
    PolyMatrix m(q.rows(), q.cols(), std::move(vars));
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            m.at(i, j) = Polynomial::constant(m.vars(), q.at(i, j));
    return m;
}

PolyMatrix PolyMatrix::block2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                                const PolyMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw DimensionError("block2x2 shape mismatch");
    PolyMatrix m(a.rows() + c.rows(), a.cols() + b.cols(), a.vars());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) m.at(a.rows() + i, j) = c.at(i, j);
        for (std::size_t j = 0; j < d.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = d.at(i, j);
    }
    return m;
}

PolyMatrix PolyMatrix::block_diag(const PolyMatrix& a, const PolyMatrix& b) {
    return block2x2(a, zero(a.rows(), b.cols(), a.vars()), zero(b.rows(), a.cols(), a.vars()), b);
}

void PolyMatrix::check_shape(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    check_shape(o);
    PolyMatrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    check_shape(o);
    PolyMatrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix r(*this);
    for (auto& p : r.a_) p = -p;
    return r;
}

PolyMatrix PolyMatrix::scaled(const Rat& c) const {
    PolyMatrix r(*this);
    for (auto& p : r.a_) p = p.scaled(c);
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    PolyMatrix r(rows_, o.cols_, vars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Polynomial& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Polynomial& y = o.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

PolyMatrix PolyMatrix::transposed() const {
    PolyMatrix t(cols_, rows_, vars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    return a_ == o.a_;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : a_)
        if (!p.is_zero()) return false;
    return true;
}

std::uint32_t PolyMatrix::max_entry_degree() const {
    std::uint32_t d = 0;
    for (const auto& p : a_) d = std::max(d, p.total_degree());
    return d;
}

PolyMatrix PolyMatrix::kron(const PolyMatrix& o) const {
    PolyMatrix r(rows_ * o.rows_, cols_ * o.cols_, vars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < o.rows_; ++k)
                for (std::size_t l = 0; l < o.cols_; ++l) {
                    if (o.at(k, l).is_zero()) continue;
                    r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
                }
        }
    return r;
}

QMat PolyMatrix::eval_origin() const {
    QMat q(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) q.at(i, j) = at(i, j).constant_term();
    return q;
}

bool PolyMatrix::invertible_at_origin() const {
    if (rows_ != cols_) return false;
    return rank(eval_origin()) == rows_;
}

PolyMatrix PolyMatrix::lifted(const VarListPtr& target) const {
    PolyMatrix r(rows_, cols_, target);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].lifted(target);
    return r;
}

PolyMatrix PolyMatrix::substituted(const VarListPtr& target,
                                   const std::vector<Polynomial>& images) const {
    PolyMatrix r(rows_, cols_, target);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].substituted(target, images);
    return r;
}

PolyMatrix PolyMatrix::truncated(std::uint32_t max_degree) const {
    PolyMatrix r(*this);
    for (auto& p : r.a_) p = p.truncated(max_degree);
    return r;
}

Polynomial PolyMatrix::determinant() const {
    if (rows_ != cols_) throw DimensionError("determinant of a non-square matrix");
    if (rows_ == 0) return Polynomial::constant(vars_, 1);
    if (rows_ > 16) throw InvalidArgumentError("determinant supported up to rank 16");
    // Expansion along rows top down, memoized over remaining column masks.
    std::map<std::uint32_t, Polynomial> cache;
    auto rec = [&](auto&& self, std::uint32_t remaining) -> Polynomial {
        auto it = cache.find(remaining);
        if (it != cache.end()) return it->second;
        std::size_t row = rows_ - static_cast<std::size_t>(__builtin_popcount(remaining));
        Polynomial det = Polynomial::zero(vars_);
        if (remaining == 0) {
            det = Polynomial::constant(vars_, 1);
        } else {
            // Sign alternates with the position of j among remaining columns.
            int pos = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!(remaining & (1u << j))) continue;
                if (!at(row, j).is_zero()) {
                    Polynomial sub = self(self, remaining & ~(1u << j));
                    Polynomial term = at(row, j) * sub;
                    det += (pos % 2 == 0) ? term : -term;
                }
                ++pos;
            }
        }
        cache.emplace(remaining, det);
        return det;
    };
    return rec(rec, (1u << rows_) - 1);
}

std::optional<PolyMatrix> PolyMatrix::inverse_exact() const {
    Polynomial det = determinant();
    if (!det.is_constant() || det.is_zero()) return std::nullopt;
    Rat inv_det = Rat(1) / det.constant_term();
    PolyMatrix adj(rows_, rows_, vars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) {
            // Cofactor C_ij goes to adj(j, i).
            PolyMatrix minor(rows_ - 1, rows_ - 1, vars_);
            for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < rows_; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = at(r, c);
                    ++cc;
                }
                ++rr;
            }
            Polynomial cof = minor.determinant();
            if ((i + j) & 1) cof = -cof;
            adj.at(j, i) = cof.scaled(inv_det);
        }
    return adj;
}

PolyMatrix PolyMatrix::inverse_series(std::uint32_t max_degree, bool* exact) const {
    if (rows_ != cols_) throw DimensionError("inverse of a non-square matrix");
    if (!invertible_at_origin())
        throw InvalidArgumentError("matrix is not invertible at the origin");

    // Constant-term inverse via dense solve on the identity.
    QMat c0 = eval_origin();
    QMat inv0(rows_, rows_);
    for (std::size_t j = 0; j < rows_; ++j) {
        std::vector<Rat> e(rows_, Rat(0));
        e[j] = 1;
        auto col = solve(c0, e);
        for (std::size_t i = 0; i < rows_; ++i) inv0.at(i, j) = (*col)[i];
    }
    PolyMatrix s0inv = from_constant(inv0, vars_);
    PolyMatrix higher = *this - from_constant(c0, vars_);
    if (higher.is_zero()) {
        if (exact) *exact = true;
        return s0inv;
    }
    // (1 + N)^{-1} S0^{-1} with N = S0^{-1} (S - S0); N has no constant term,
    // so the series is finite after truncation.
    PolyMatrix n = s0inv * higher;
    PolyMatrix acc = identity(rows_, vars_);
    PolyMatrix power = identity(rows_, vars_);
    for (std::uint32_t k = 1; k <= max_degree; ++k) {
        power = (power * n).truncated(max_degree);
        if (power.is_zero()) break;
        acc = (k % 2 == 1) ? acc - power : acc + power;
    }
    PolyMatrix result = (acc * s0inv).truncated(max_degree);
    if (exact) *exact = (*this * result == identity(rows_, vars_));
    return result;
}

}  // namespace mfk
