#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace mfk {

// Exponent vector of a power product. The ambient variable list is kept by
// the owning polynomial; a monomial only knows its arity.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : e(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    static Monomial one(std::size_t arity) { return Monomial(arity); }

    std::size_t arity() const { return e.size(); }

    std::uint32_t degree() const {
        return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
    }

    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    // Quotient of power products; caller guarantees divisibility.
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e.size(); ++i)
            if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
        return r;
    }

    bool operator==(const Monomial&) const = default;
    // Plain lexicographic compare on the exponent vector; used only as an
    // arbitrary total order for canonical storage, not as a term order.
    auto operator<=>(const Monomial&) const = default;
};

}  // namespace mfk
