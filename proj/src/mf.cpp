#include "mfk/mf.hpp"

#include <map>
#include <sstream>

#include "mfk/groebner.hpp"

namespace mfk {

std::string VerifyReport::to_string() const {
    if (valid()) return "valid";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.identity << " at (" << v.row << "," << v.col << "): " << v.detail << "\n";
    }
    return os.str();
}

namespace {

void report_nonzero(VerifyReport& rep, const PolyMatrix& m, const std::string& identity) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero())
                rep.violations.push_back({identity, i, j, m.at(i, j).to_string()});
}

}  // namespace

VerifyReport verify(const MatrixFactorization& m) {
    VerifyReport rep;
    if (m.phi.rows() != m.phi.cols() || m.psi.rows() != m.psi.cols() ||
        m.phi.rows() != m.psi.rows())
        throw DimensionError("factorization blocks must be square of equal size");
    PolyMatrix w_id = PolyMatrix::scalar(m.rank(), m.potential);
    report_nonzero(rep, m.phi * m.psi - w_id, "phi*psi - w*1");
    report_nonzero(rep, m.psi * m.phi - w_id, "psi*phi - w*1");
    QMat phi0 = m.phi.eval_origin();
    QMat psi0 = m.psi.eval_origin();
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j) {
            if (!mfk::is_zero(phi0.at(i, j)))
                rep.violations.push_back({"phi(0)", i, j, phi0.at(i, j).get_str()});
            if (!mfk::is_zero(psi0.at(i, j)))
                rep.violations.push_back({"psi(0)", i, j, psi0.at(i, j).get_str()});
        }
    return rep;
}

VarListPtr merge_vars(const VarListPtr& a, const VarListPtr& b) {
    if (same_vars(a, b)) return a;
    std::vector<std::string> names = a->names();
    for (const auto& n : b->names())
        if (!a->index(n)) names.push_back(n);
    return make_vars(std::move(names));
}

MatrixFactorization shift(const MatrixFactorization& m) {
    return {-m.psi, -m.phi, m.potential};
}

MatrixFactorization transpose_dual(const MatrixFactorization& m) {
    return {m.psi.transposed(), m.phi.transposed(), m.potential};
}

MatrixFactorization dual(const MatrixFactorization& m) {
    return {-m.phi.transposed(), -m.psi.transposed(), m.potential};
}

MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
    if (!same_vars(a.vars(), b.vars()))
        throw VarMismatchError("direct sum needs one variable list");
    if (!(a.potential == b.potential))
        throw InvalidArgumentError("direct sum needs matching potentials");
    return {PolyMatrix::block_diag(a.phi, b.phi), PolyMatrix::block_diag(a.psi, b.psi),
            a.potential};
}

MatrixFactorization tensor(const MatrixFactorization& a, const MatrixFactorization& b) {
    VarListPtr vars = merge_vars(a.vars(), b.vars());
    PolyMatrix phi = a.phi.lifted(vars), psi = a.psi.lifted(vars);
    PolyMatrix phi2 = b.phi.lifted(vars), psi2 = b.psi.lifted(vars);
    PolyMatrix id_a = PolyMatrix::identity(a.rank(), vars);
    PolyMatrix id_b = PolyMatrix::identity(b.rank(), vars);

    PolyMatrix big_phi = PolyMatrix::block2x2(id_a.kron(phi2), psi.kron(id_b),  //
                                              phi.kron(id_b), -id_a.kron(psi2));
    PolyMatrix big_psi = PolyMatrix::block2x2(id_a.kron(psi2), psi.kron(id_b),  //
                                              phi.kron(id_b), -id_a.kron(phi2));
    Polynomial w = a.potential.lifted(vars) + b.potential.lifted(vars);
    return {std::move(big_phi), std::move(big_psi), std::move(w)};
}

GaugeResult gauge(const MatrixFactorization& m, const GaugePair& g,
                  std::uint32_t truncation_degree) {
    if (g.s.rows() != m.rank() || g.t.rows() != m.rank())
        throw DimensionError("gauge pair size must match the factorization rank");
    if (!g.s.invertible_at_origin() || !g.t.invertible_at_origin())
        throw InvalidArgumentError("gauge matrices must be invertible at the origin");
    bool s_exact = false, t_exact = false;
    PolyMatrix s_inv = g.s.inverse_series(truncation_degree, &s_exact);
    PolyMatrix t_inv = g.t.inverse_series(truncation_degree, &t_exact);
    bool exact = s_exact && t_exact;
    PolyMatrix phi = g.t * m.phi * s_inv;
    PolyMatrix psi = g.s * m.psi * t_inv;
    if (!exact) {
        phi = phi.truncated(truncation_degree);
        psi = psi.truncated(truncation_degree);
    }
    return {{std::move(phi), std::move(psi), m.potential}, exact, truncation_degree};
}

namespace {

// All monomials of degree <= bound not divisible by a basis leading
// monomial. Works for infinite-dimensional quotients.
std::vector<Monomial> standard_monomials_up_to(const std::vector<Polynomial>& gb,
                                               const MonomialOrder& order, std::size_t arity,
                                               std::uint32_t bound) {
    std::vector<Monomial> leads;
    for (const auto& p : gb) leads.push_back(p.leading_term(order).first);
    std::vector<Monomial> out;
    Monomial cur(arity);
    auto rec = [&](auto&& self, std::size_t v, std::uint32_t left) -> void {
        if (v == arity) {
            for (const auto& lm : leads)
                if (lm.divides(cur)) return;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur.e[v] = e;
            self(self, v + 1, left - e);
        }
        cur.e[v] = 0;
    };
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return order.less(a, b); });
    return out;
}

}  // namespace

CokPresentation cok_presentation(const MatrixFactorization& m, std::uint32_t degree_bound) {
    Ideal iw;
    iw.generators.push_back(m.potential);
    QuotientRing qw = make_quotient(std::move(iw));

    const std::size_t r = m.rank();
    PolyMatrix pres(r, r, m.vars());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) pres.at(i, j) = normal_form(m.phi.at(i, j), qw);

    const std::uint32_t slack = pres.max_entry_degree();
    const std::uint32_t dmax = degree_bound + 2 * slack;
    auto std_mons = standard_monomials_up_to(qw.groebner(), qw.order(), m.vars()->arity(), dmax);
    std::map<Monomial, int> index;
    for (std::size_t k = 0; k < std_mons.size(); ++k) index[std_mons[k]] = static_cast<int>(k);
    const int ncols = static_cast<int>(r * std_mons.size());

    auto coords = [&](const Polynomial& p, std::size_t comp) {
        SparseVec v;
        std::vector<std::pair<int, Rat>> entries;
        for (const auto& [mon, c] : p.terms()) {
            auto it = index.find(mon);
            if (it == index.end()) continue;  // beyond the truncation window
            entries.emplace_back(static_cast<int>(comp) * static_cast<int>(std_mons.size()) +
                                     it->second,
                                 c);
        }
        std::sort(entries.begin(), entries.end());
        v.nz = std::move(entries);
        return v;
    };

    // Image rows: columns of phi times monomials, reduced mod (w).
    std::vector<SparseVec> image_rows;
    auto gen_mons = standard_monomials_up_to(qw.groebner(), qw.order(), m.vars()->arity(),
                                             degree_bound + slack);
    for (std::size_t j = 0; j < r; ++j) {
        for (const auto& mon : gen_mons) {
            SparseVec row;
            for (std::size_t i = 0; i < r; ++i) {
                Polynomial e = normal_form(pres.at(i, j).mul_monomial(mon, Rat(1)), qw);
                SparseVec part = coords(e, i);
                row.nz.insert(row.nz.end(), part.nz.begin(), part.nz.end());
            }
            std::sort(row.nz.begin(), row.nz.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (!row.empty()) image_rows.push_back(std::move(row));
        }
    }

    SparseEliminator el(ncols);
    el.add_rows(std::move(image_rows));

    CokPresentation out;
    out.presentation = std::move(pres);
    out.degree_bound = degree_bound;
    out.hilbert.assign(degree_bound + 1, 0);
    for (std::uint32_t e = 0; e <= degree_bound; ++e) {
        for (std::size_t k = 0; k < std_mons.size(); ++k) {
            if (std_mons[k].degree() != e) continue;
            for (std::size_t i = 0; i < r; ++i) {
                SparseVec unit;
                unit.nz.emplace_back(static_cast<int>(i * std_mons.size() + k), Rat(1));
                if (el.insert(std::move(unit))) out.hilbert[e] += 1;
            }
        }
    }
    return out;
}

MatrixFactorization mf_xy(std::size_t p, std::size_t q) {
    return mf_xy(p, q, make_vars({"x", "y"}));
}

MatrixFactorization mf_xy(std::size_t p, std::size_t q, const VarListPtr& vars) {
    if (p + q < 1) throw InvalidArgumentError("mf_xy needs p + q >= 1");
    if (vars->arity() != 2) throw InvalidArgumentError("mf_xy needs a two-variable list");
    Polynomial x = Polynomial::variable(vars, 0);
    Polynomial y = Polynomial::variable(vars, 1);
    const std::size_t r = p + q;
    PolyMatrix phi(r, r, vars), psi(r, r, vars);
    for (std::size_t i = 0; i < r; ++i) {
        phi.at(i, i) = i < p ? x : y;
        psi.at(i, i) = i < p ? y : x;
    }
    return {std::move(phi), std::move(psi), x * y};
}

MatrixFactorization mf_brieskorn(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& nh) {
    if (nh.empty()) throw InvalidArgumentError("mf_brieskorn needs at least one factor");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nh.size(); ++i) names.push_back("x" + std::to_string(i + 1));
    VarListPtr vars = make_vars(names);

    MatrixFactorization acc;
    bool first = true;
    for (std::size_t i = 0; i < nh.size(); ++i) {
        auto [n, h] = nh[i];
        if (h < 2 || n < 1 || n > h - 1)
            throw InvalidArgumentError("mf_brieskorn parameters need 2 <= h and 1 <= n <= h-1");
        Polynomial xi = Polynomial::variable(vars, i);
        MatrixFactorization factor{PolyMatrix::scalar(1, xi.pow(n)),
                                   PolyMatrix::scalar(1, xi.pow(h - n)), xi.pow(h)};
        acc = first ? factor : tensor(acc, factor);
        first = false;
    }
    return acc;
}

MorphismPair identity_morphism(const MatrixFactorization& m) {
    return {m, m, Parity::Even, PolyMatrix::identity(m.rank(), m.vars()),
            PolyMatrix::identity(m.rank(), m.vars())};
}

MorphismPair compose(const MorphismPair& f, const MorphismPair& g) {
    if (f.source.rank() != g.target.rank())
        throw DimensionError("composition: inner ranks disagree");
    MorphismPair h;
    h.source = g.source;
    h.target = f.target;
    if (f.parity == Parity::Even && g.parity == Parity::Even) {
        h.parity = Parity::Even;
        h.s = f.s * g.s;
        h.t = f.t * g.t;
    } else if (f.parity == Parity::Even && g.parity == Parity::Odd) {
        h.parity = Parity::Odd;
        h.s = f.t * g.s;
        h.t = f.s * g.t;
    } else if (f.parity == Parity::Odd && g.parity == Parity::Even) {
        h.parity = Parity::Odd;
        h.s = f.s * g.s;
        h.t = f.t * g.t;
    } else {
        h.parity = Parity::Even;
        h.s = f.t * g.s;
        h.t = f.s * g.t;
    }
    return h;
}

bool morphism_blocks_zero(const MorphismPair& f) { return f.s.is_zero() && f.t.is_zero(); }

MorphismPair morphism_sub(const MorphismPair& a, const MorphismPair& b) {
    if (a.parity != b.parity) throw InvalidArgumentError("parity mismatch in difference");
    MorphismPair r = a;
    r.s = a.s - b.s;
    r.t = a.t - b.t;
    return r;
}

}  // namespace mfk
