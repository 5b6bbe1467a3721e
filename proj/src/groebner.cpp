#include "mfk/groebner.hpp"

#include <algorithm>
#include <deque>

#include "mfk/budget.hpp"

namespace mfk {

VarListPtr Ideal::vars() const {
    if (generators.empty()) throw InvalidArgumentError("ideal needs at least one generator");
    return generators.front().vars();
}

QuotientRing::QuotientRing(Ideal ideal, std::vector<Polynomial> groebner,
                           std::optional<std::vector<Monomial>> monomial_basis)
    : ideal_(std::move(ideal)),
      groebner_(std::move(groebner)),
      monomial_basis_(std::move(monomial_basis)) {}

const std::vector<Monomial>& QuotientRing::monomial_basis() const {
    if (!monomial_basis_) throw InvalidArgumentError("quotient ring is infinite-dimensional");
    return *monomial_basis_;
}

namespace {

Polynomial monic(const Polynomial& p, const MonomialOrder& ord) {
    if (p.is_zero()) return p;
    return p.scaled(Rat(1) / p.leading_term(ord).second);
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
    Polynomial rest = p;
    Polynomial out = Polynomial::zero(p.vars());
    while (!rest.is_zero()) {
        const auto& [lm, lc] = rest.leading_term(order);
        bool divided = false;
        for (const auto& g : basis) {
            const auto& [glm, glc] = g.leading_term(order);
            if (glm.divides(lm)) {
                BudgetScope::charge(g.terms().size());
                rest -= g.mul_monomial(lm / glm, lc / glc);
                divided = true;
                break;
            }
        }
        if (!divided) {
            out += Polynomial::monomial(p.vars(), lm, lc);
            rest -= Polynomial::monomial(p.vars(), lm, lc);
        }
    }
    return out;
}

Polynomial normal_form(const Polynomial& p, const QuotientRing& q) {
    if (!same_vars(p.vars(), q.vars()))
        throw VarMismatchError("normal form: polynomial over a different variable list");
    return normal_form(p, q.groebner(), q.order());
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    const auto& [mf, cf] = f.leading_term(ord);
    const auto& [mg, cg] = g.leading_term(ord);
    Monomial l = lcm(mf, mg);
    return f.mul_monomial(l / mf, Rat(1) / cf) - g.mul_monomial(l / mg, Rat(1) / cg);
}

struct Pair {
    std::size_t i, j;
    Monomial lcm_m;
    std::uint32_t deg;
};

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators,
                                       const MonomialOrder& order) {
    std::vector<Polynomial> g;
    for (const auto& p : generators) {
        if (p.is_zero()) throw InvalidArgumentError("ideal generator is zero");
        g.push_back(monic(p, order));
    }

    std::deque<Pair> pairs;
    auto push_pairs = [&](std::size_t newest) {
        const Monomial& lm_new = g[newest].leading_term(order).first;
        for (std::size_t i = 0; i < newest; ++i) {
            Monomial l = lcm(g[i].leading_term(order).first, lm_new);
            pairs.push_back({i, newest, l, l.degree()});
        }
    };
    for (std::size_t k = 1; k < g.size(); ++k) push_pairs(k);

    while (!pairs.empty()) {
        // Lowest lcm degree first keeps reducers small.
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& a, const Pair& b) { return a.deg < b.deg; });
        Pair pr = *it;
        pairs.erase(it);

        const Monomial& lmi = g[pr.i].leading_term(order).first;
        const Monomial& lmj = g[pr.j].leading_term(order).first;
        // First Buchberger criterion: coprime leading monomials.
        if (lmi.coprime(lmj)) continue;
        // Chain criterion: some other basis element divides the lcm and both
        // companion pairs have already been handled.
        bool chained = false;
        for (std::size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!g[k].leading_term(order).first.divides(pr.lcm_m)) continue;
            auto pending = [&](std::size_t a, std::size_t b) {
                for (const auto& q : pairs)
                    if ((q.i == a && q.j == b) || (q.i == b && q.j == a)) return true;
                return false;
            };
            if (!pending(pr.i, k) && !pending(pr.j, k)) chained = true;
        }
        if (chained) continue;

        BudgetScope::charge();
        Polynomial s = normal_form(s_polynomial(g[pr.i], g[pr.j], order), g, order);
        if (!s.is_zero()) {
            g.push_back(monic(s, order));
            push_pairs(g.size() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Monomial& lm = g[i].leading_term(order).first;
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lmj = g[j].leading_term(order).first;
            if (lmj.divides(lm) && !(lmj == lm && j > i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }

    // Interreduce to the unique reduced basis.
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = others.empty() ? minimal[i] : normal_form(minimal[i], others, order);
        if (!r.is_zero()) reduced.push_back(monic(r, order));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.less(a.leading_term(order).first, b.leading_term(order).first);
    });
    return reduced;
}

namespace {

// Standard monomials: those divisible by no basis leading monomial. Finite
// iff every variable appears as a pure power among the leading monomials.
std::optional<std::vector<Monomial>> enumerate_standard_monomials(
    const std::vector<Polynomial>& gb, const MonomialOrder& order, std::size_t arity) {
    std::vector<Monomial> leads;
    for (const auto& p : gb) leads.push_back(p.leading_term(order).first);

    for (const auto& lm : leads)
        if (lm.is_one()) return std::vector<Monomial>{};  // unit ideal

    std::vector<std::uint32_t> bound(arity, 0);
    for (std::size_t v = 0; v < arity; ++v) {
        bool pure = false;
        for (const auto& lm : leads) {
            bool only_v = lm.e[v] > 0;
            for (std::size_t u = 0; u < arity && only_v; ++u)
                if (u != v && lm.e[u] > 0) only_v = false;
            if (only_v) {
                pure = true;
                bound[v] = std::max(bound[v], lm.e[v]);
            }
        }
        if (!pure) return std::nullopt;
    }

    std::vector<Monomial> basis;
    Monomial cur(arity);
    auto divisible = [&](const Monomial& m) {
        for (const auto& lm : leads)
            if (lm.divides(m)) return true;
        return false;
    };
    // Depth-first walk of the box below the pure-power bounds.
    std::vector<std::uint32_t> idx(arity, 0);
    for (;;) {
        if (!divisible(cur)) basis.push_back(cur);
        std::size_t v = 0;
        while (v < arity) {
            if (cur.e[v] + 1 < bound[v]) {
                ++cur.e[v];
                break;
            }
            cur.e[v] = 0;
            ++v;
        }
        if (v == arity) break;
    }
    std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
        return order.less(a, b);
    });
    return basis;
}

}  // namespace

QuotientRing make_quotient(Ideal ideal) {
    auto gb = groebner_basis(ideal.generators, ideal.order);
    std::optional<std::vector<Monomial>> basis;
    if (gb.empty()) {
        basis = std::nullopt;  // zero ideal of a nonzero ring
    } else {
        basis = enumerate_standard_monomials(gb, ideal.order, ideal.vars()->arity());
    }
    return QuotientRing(std::move(ideal), std::move(gb), std::move(basis));
}

QuotientRing tjurina_ring(const Polynomial& w) {
    if (w.is_zero()) throw InvalidArgumentError("potential is zero");
    if (!mfk::is_zero(w.constant_term()))
        throw InvalidArgumentError("potential must vanish at the origin");
    Ideal ideal;
    ideal.generators.push_back(w);
    for (std::size_t v = 0; v < w.vars()->arity(); ++v) {
        Polynomial d = w.derivative(v);
        if (!d.is_zero()) ideal.generators.push_back(std::move(d));
    }
    return make_quotient(std::move(ideal));
}

}  // namespace mfk
