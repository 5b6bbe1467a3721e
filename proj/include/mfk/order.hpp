#pragma once

#include <cstddef>

#include "mfk/monomial.hpp"

namespace mfk {

enum class OrderKind {
    Degrevlex,   // degree, ties by reverse lexicographic
    Lex,         // pure lexicographic
    Elimination  // block order: first `block` variables dominate
};

// Term order on monomials of a fixed arity. Elimination orders compare the
// leading variable block first (degrevlex within each block), so any
// monomial containing a block variable beats any monomial without one.
class MonomialOrder {
public:
    MonomialOrder() : kind_(OrderKind::Degrevlex), block_(0) {}
    explicit MonomialOrder(OrderKind kind, std::size_t block = 0)
        : kind_(kind), block_(block) {}

    static MonomialOrder degrevlex() { return MonomialOrder(OrderKind::Degrevlex); }
    static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex); }
    // Eliminates the first `block` variables of the ambient list.
    static MonomialOrder eliminating(std::size_t block) {
        return MonomialOrder(OrderKind::Elimination, block);
    }

    OrderKind kind() const { return kind_; }
    std::size_t block() const { return block_; }

    bool less(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case OrderKind::Lex:
                return lex_less(a, b, 0, a.arity());
            case OrderKind::Degrevlex:
                return drl_less(a, b, 0, a.arity());
            case OrderKind::Elimination: {
                int c = drl_cmp(a, b, 0, block_);
                if (c != 0) return c < 0;
                return drl_less(a, b, block_, a.arity());
            }
        }
        return false;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return less(b, a); }

    bool operator==(const MonomialOrder&) const = default;

private:
    static bool lex_less(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
    }

    static int drl_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = hi; i-- > lo;)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
        return 0;
    }

    static bool drl_less(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        return drl_cmp(a, b, lo, hi) < 0;
    }

    OrderKind kind_;
    std::size_t block_;
};

}  // namespace mfk
