#include "mfk/bilinear.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mfk/homotopy.hpp"

namespace mfk {

std::string kind_name(StructureKind k) {
    return k == StructureKind::Untwisted ? "untwisted" : "twisted";
}

namespace {

void check_structure_shape(const BilinearStructure& B) {
    const std::size_t r = B.host.rank();
    if (B.b0.rows() != r || B.b0.cols() != r || B.b1.rows() != r || B.b1.cols() != r)
        throw DimensionError("structure blocks must be square of the host rank");
    if (B.sign != 1 && B.sign != -1) throw InvalidArgumentError("structure sign must be +1 or -1");
}

}  // namespace

VerifyReport verify_structure(const BilinearStructure& B) {
    check_structure_shape(B);
    VerifyReport rep;
    const auto& phi = B.host.phi;
    const auto& psi = B.host.psi;
    const Rat eps(B.sign);

    auto collect = [&rep](const PolyMatrix& m, const std::string& identity) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_zero())
                    rep.violations.push_back({identity, i, j, m.at(i, j).to_string()});
    };

    if (B.kind == StructureKind::Untwisted) {
        // symmetry  tb0 = -eps b1
        collect(B.b0.transposed() + B.b1.scaled(eps), "t(b0) + eps*b1");
        // closedness  tphi b0 = -b1 phi ,  tpsi b1 = -b0 psi
        collect(phi.transposed() * B.b0 + B.b1 * phi, "t(phi)*b0 + b1*phi");
        collect(psi.transposed() * B.b1 + B.b0 * psi, "t(psi)*b1 + b0*psi");
    } else {
        // symmetry  tb0 = eps b0 , tb1 = eps b1
        collect(B.b0.transposed() - B.b0.scaled(eps), "t(b0) - eps*b0");
        collect(B.b1.transposed() - B.b1.scaled(eps), "t(b1) - eps*b1");
        // closedness  tphi b1 = b0 psi ,  tpsi b0 = b1 phi
        collect(phi.transposed() * B.b1 - B.b0 * psi, "t(phi)*b1 - b0*psi");
        collect(psi.transposed() * B.b0 - B.b1 * phi, "t(psi)*b0 - b1*phi");
    }

    if (!B.b0.invertible_at_origin())
        rep.violations.push_back({"b0 invertible at origin", 0, 0, "singular constant term"});
    if (!B.b1.invertible_at_origin())
        rep.violations.push_back({"b1 invertible at origin", 0, 0, "singular constant term"});
    return rep;
}

StructureGaugeResult gauge_structure(const BilinearStructure& B, const GaugePair& F,
                                     std::uint32_t truncation_degree) {
    if (F.s.rows() != B.host.rank() || F.t.rows() != B.host.rank())
        throw DimensionError("gauge pair size must match the host rank");
    if (!F.s.invertible_at_origin() || !F.t.invertible_at_origin())
        throw InvalidArgumentError("gauge matrices must be invertible at the origin");
    bool s_exact = false, t_exact = false;
    PolyMatrix s_inv = F.s.inverse_series(truncation_degree, &s_exact);
    PolyMatrix t_inv = F.t.inverse_series(truncation_degree, &t_exact);
    bool exact = s_exact && t_exact;

    BilinearStructure out = B;
    out.host.phi = t_inv * B.host.phi * F.s;
    out.host.psi = s_inv * B.host.psi * F.t;
    if (B.kind == StructureKind::Untwisted) {
        out.b0 = F.t.transposed() * B.b0 * F.s;
        out.b1 = F.s.transposed() * B.b1 * F.t;
    } else {
        out.b0 = F.s.transposed() * B.b0 * F.s;
        out.b1 = F.t.transposed() * B.b1 * F.t;
    }
    if (!exact) {
        out.host.phi = out.host.phi.truncated(truncation_degree);
        out.host.psi = out.host.psi.truncated(truncation_degree);
    }
    return {std::move(out), exact, truncation_degree};
}

namespace {

PolyMatrix block_inverse(const PolyMatrix& b, const std::string& which) {
    auto inv = b.inverse_exact();
    if (!inv)
        throw InvalidArgumentError("structure block " + which +
                                   " has no exact polynomial inverse (not unimodular)");
    return *inv;
}

}  // namespace

MorphismPair adjoint(const MorphismPair& f, const BilinearStructure& B_src,
                     const BilinearStructure& B_tgt) {
    if (B_src.kind != B_tgt.kind)
        throw InvalidArgumentError("adjoint needs structures of one kind");
    check_structure_shape(B_src);
    check_structure_shape(B_tgt);

    MorphismPair out;
    out.source = f.target;
    out.target = f.source;
    out.parity = f.parity;
    const PolyMatrix ts = f.s.transposed();
    const PolyMatrix tt = f.t.transposed();

    if (B_src.kind == StructureKind::Untwisted) {
        if (f.parity == Parity::Even) {
            out.s = block_inverse(B_src.b0, "b0") * tt * B_tgt.b0;
            out.t = block_inverse(B_src.b1, "b1") * ts * B_tgt.b1;
        } else {
            out.s = block_inverse(B_src.b1, "b1") * ts * B_tgt.b0;
            out.t = block_inverse(B_src.b0, "b0") * tt * B_tgt.b1;
        }
    } else {
        if (f.parity == Parity::Even) {
            out.s = block_inverse(B_src.b0, "b0") * ts * B_tgt.b0;
            out.t = block_inverse(B_src.b1, "b1") * tt * B_tgt.b1;
        } else {
            out.s = block_inverse(B_src.b1, "b1") * tt * B_tgt.b0;
            out.t = block_inverse(B_src.b0, "b0") * ts * B_tgt.b1;
        }
    }
    return out;
}

CommutationReport check_commutation(const MorphismPair& f, const BilinearStructure& B_src,
                                    const BilinearStructure& B_tgt) {
    CommutationReport rep;
    const int s = B_src.kind == StructureKind::Untwisted ? +1 : -1;
    const int parity_sign = f.parity == Parity::Even ? +1 : -1;
    rep.expected_sign = s * parity_sign;

    MorphismPair lhs = adjoint(differential(f), B_src, B_tgt);
    MorphismPair rhs = differential(adjoint(f, B_src, B_tgt));
    PolyMatrix diff_s = lhs.s - rhs.s.scaled(Rat(rep.expected_sign));
    PolyMatrix diff_t = lhs.t - rhs.t.scaled(Rat(rep.expected_sign));
    rep.holds = diff_s.is_zero() && diff_t.is_zero();
    if (!rep.holds) {
        std::ostringstream os;
        os << "commutation rule fails";
        for (std::size_t i = 0; i < diff_s.rows(); ++i)
            for (std::size_t j = 0; j < diff_s.cols(); ++j)
                if (!diff_s.at(i, j).is_zero()) {
                    os << "; S(" << i << "," << j << ") = " << diff_s.at(i, j).to_string();
                    rep.detail = os.str();
                    return rep;
                }
        for (std::size_t i = 0; i < diff_t.rows(); ++i)
            for (std::size_t j = 0; j < diff_t.cols(); ++j)
                if (!diff_t.at(i, j).is_zero()) {
                    os << "; T(" << i << "," << j << ") = " << diff_t.at(i, j).to_string();
                    rep.detail = os.str();
                    return rep;
                }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Tensor of structures
// ---------------------------------------------------------------------------

namespace {

struct KindTable {
    StructureKind out_kind;
    int out_sign;
};

KindTable tensor_kind(StructureKind a, int ea, StructureKind b, int eb) {
    if (a == StructureKind::Untwisted && b == StructureKind::Untwisted)
        return {StructureKind::Twisted, -ea * eb};
    if (a == StructureKind::Twisted && b == StructureKind::Twisted)
        return {StructureKind::Twisted, ea * eb};
    return {StructureKind::Untwisted, ea * eb};
}

}  // namespace

BilinearStructure tensor_structure(const BilinearStructure& B, const BilinearStructure& B2) {
    MatrixFactorization host = tensor(B.host, B2.host);
    const VarListPtr vars = host.vars();
    const KindTable out = tensor_kind(B.kind, B.sign, B2.kind, B2.sign);

    PolyMatrix a0 = B.b0.lifted(vars), a1 = B.b1.lifted(vars);
    PolyMatrix c0 = B2.b0.lifted(vars), c1 = B2.b1.lifted(vars);
    const std::size_t rr = B.host.rank() * B2.host.rank();
    PolyMatrix zr = PolyMatrix::zero(rr, rr, vars);

    // The Kronecker pairings are forced by which dual component each graded
    // piece lands in; only signs remain free. They are scanned in a fixed
    // order and the first candidate passing verify_structure wins.
    auto assemble = [&](int s1, int s2, int s3, int s4) -> BilinearStructure {
        BilinearStructure cand;
        cand.kind = out.out_kind;
        cand.sign = out.out_sign;
        cand.host = host;
        const bool a_tw = B.kind == StructureKind::Twisted;
        if (!a_tw) {
            // untwisted (x) anything: antidiagonal pairings
            cand.b0 = PolyMatrix::block2x2(zr, a1.kron(c1).scaled(Rat(s1)),
                                           a0.kron(c0).scaled(Rat(s2)), zr);
            cand.b1 = PolyMatrix::block2x2(zr, a1.kron(c0).scaled(Rat(s3)),
                                           a0.kron(c1).scaled(Rat(s4)), zr);
        } else {
            // twisted (x) anything: diagonal pairings
            cand.b0 = PolyMatrix::block_diag(a0.kron(c0).scaled(Rat(s1)),
                                             a1.kron(c1).scaled(Rat(s2)));
            cand.b1 = PolyMatrix::block_diag(a0.kron(c1).scaled(Rat(s3)),
                                             a1.kron(c0).scaled(Rat(s4)));
        }
        return cand;
    };

    std::string first_failure;
    static const int signs[2] = {+1, -1};
    for (int s1 : signs)
        for (int s2 : signs)
            for (int s3 : signs)
                for (int s4 : signs) {
                    BilinearStructure cand = assemble(s1, s2, s3, s4);
                    VerifyReport rep = verify_structure(cand);
                    if (rep.valid()) return cand;
                    if (first_failure.empty()) first_failure = rep.to_string();
                }
    throw Error("tensor_structure: no signed Kronecker candidate verifies; first failure: " +
                first_failure);
}

// ---------------------------------------------------------------------------
// Structure search
// ---------------------------------------------------------------------------

bool StructureSolutionSpace::contains_invertible() const {
    return invertible_element().has_value();
}

std::optional<BilinearStructure> StructureSolutionSpace::invertible_element() const {
    if (basis.empty()) return std::nullopt;
    for (const auto& c : basis)
        if (c.invertible_at_origin) return c.structure;
    // Sweep combinations sum_i t^i basis_i. Each block determinant at the
    // origin is a polynomial in t of degree <= r (dim - 1), so sampling
    // more points than twice that degree decides emptiness exactly.
    const std::size_t r = basis.front().structure.host.rank();
    const std::size_t dim = basis.size();
    const std::size_t tries = 2 * r * (dim - 1) + 2;
    for (std::size_t t = 1; t <= tries; ++t) {
        BilinearStructure combo = basis.front().structure;
        Rat coeff(1);
        for (std::size_t i = 1; i < dim; ++i) {
            coeff *= Rat(static_cast<long>(t));
            combo.b0 = combo.b0 + basis[i].structure.b0.scaled(coeff);
            combo.b1 = combo.b1 + basis[i].structure.b1.scaled(coeff);
        }
        if (combo.b0.invertible_at_origin() && combo.b1.invertible_at_origin()) return combo;
    }
    return std::nullopt;
}

namespace {

StructureSolutionSpace search_one_sign(const MatrixFactorization& m, StructureKind kind,
                                       int sign, std::uint32_t max_degree) {
    const std::size_t r = m.rank();
    const VarListPtr vars = m.vars();
    const auto mons = detail::monomials_up_to(vars->arity(), max_degree);
    const int ncols = static_cast<int>(2 * r * r * mons.size());

    const std::uint32_t out_bound =
        max_degree + std::max(m.phi.max_entry_degree(), m.psi.max_entry_degree());
    const auto out_mons = detail::monomials_up_to(vars->arity(), out_bound);
    std::map<Monomial, int> out_index;
    for (std::size_t k = 0; k < out_mons.size(); ++k)
        out_index[out_mons[k]] = static_cast<int>(k);

    // Identities, as rows "coefficient of each output monomial = 0":
    //   untwisted: I0 = tphi b0 + b1 phi, I1 = tpsi b1 + b0 psi,
    //              I2 = tb0 + eps b1
    //   twisted:   I0 = tphi b1 - b0 psi, I1 = tpsi b0 - b1 phi,
    //              I2 = tb0 - eps b0,     I3 = tb1 - eps b1
    std::map<long, std::vector<std::pair<int, Rat>>> rows_acc;
    auto row_of = [&](std::size_t ident, std::size_t i, std::size_t j, int mono) {
        return static_cast<long>(((ident * r + i) * r + j) * out_mons.size()) + mono;
    };
    auto scatter = [&](std::size_t ident, std::size_t i, std::size_t j, const Polynomial& p,
                       int col) {
        for (const auto& [mon, c] : p.terms()) {
            auto it = out_index.find(mon);
            if (it == out_index.end())
                throw Error("structure_search: output coefficient beyond index window");
            rows_acc[row_of(ident, i, j, it->second)].emplace_back(col, c);
        }
    };

    const PolyMatrix tphi = m.phi.transposed();
    const PolyMatrix tpsi = m.psi.transposed();
    const Rat eps(sign);

    for (std::size_t block = 0; block < 2; ++block)
        for (std::size_t bi = 0; bi < r; ++bi)
            for (std::size_t bj = 0; bj < r; ++bj)
                for (std::size_t mk = 0; mk < mons.size(); ++mk) {
                    const int col =
                        static_cast<int>(((block * r + bi) * r + bj) * mons.size() + mk);
                    const Monomial& mon = mons[mk];
                    if (kind == StructureKind::Untwisted) {
                        if (block == 0) {
                            // b0 unit E at (bi,bj): tphi*E into I0, E*psi into I1, tE into I2
                            for (std::size_t i = 0; i < r; ++i)
                                scatter(0, i, bj, tphi.at(i, bi).mul_monomial(mon, Rat(1)), col);
                            for (std::size_t j = 0; j < r; ++j)
                                scatter(1, bi, j, m.psi.at(bj, j).mul_monomial(mon, Rat(1)), col);
                            scatter(2, bj, bi, Polynomial::monomial(vars, mon, Rat(1)), col);
                        } else {
                            // b1 unit E: E*phi into I0, tpsi*E into I1, eps*E into I2
                            for (std::size_t j = 0; j < r; ++j)
                                scatter(0, bi, j, m.phi.at(bj, j).mul_monomial(mon, Rat(1)), col);
                            for (std::size_t i = 0; i < r; ++i)
                                scatter(1, i, bj, tpsi.at(i, bi).mul_monomial(mon, Rat(1)), col);
                            scatter(2, bi, bj, Polynomial::monomial(vars, mon, eps), col);
                        }
                    } else {
                        if (block == 0) {
                            // b0 unit E: -E*psi into I0, tpsi*E into I1, tE - eps E into I2
                            for (std::size_t j = 0; j < r; ++j)
                                scatter(0, bi, j, m.psi.at(bj, j).mul_monomial(mon, Rat(-1)), col);
                            for (std::size_t i = 0; i < r; ++i)
                                scatter(1, i, bj, tpsi.at(i, bi).mul_monomial(mon, Rat(1)), col);
                            scatter(2, bj, bi, Polynomial::monomial(vars, mon, Rat(1)), col);
                            scatter(2, bi, bj, Polynomial::monomial(vars, mon, -eps), col);
                        } else {
                            // b1 unit E: tphi*E into I0, -E*phi into I1, tE - eps E into I3
                            for (std::size_t i = 0; i < r; ++i)
                                scatter(0, i, bj, tphi.at(i, bi).mul_monomial(mon, Rat(1)), col);
                            for (std::size_t j = 0; j < r; ++j)
                                scatter(1, bi, j, m.phi.at(bj, j).mul_monomial(mon, Rat(-1)), col);
                            scatter(3, bj, bi, Polynomial::monomial(vars, mon, Rat(1)), col);
                            scatter(3, bi, bj, Polynomial::monomial(vars, mon, -eps), col);
                        }
                    }
                }

    std::vector<SparseVec> rows;
    rows.reserve(rows_acc.size());
    for (auto& [rid, entries] : rows_acc) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec v;
        for (auto& [c, x] : entries) {
            if (!v.nz.empty() && v.nz.back().first == c)
                v.nz.back().second += x;
            else
                v.nz.emplace_back(c, x);
        }
        std::erase_if(v.nz, [](const auto& p) { return mfk::is_zero(p.second); });
        if (!v.empty()) rows.push_back(std::move(v));
    }

    auto kernel = sparse_kernel_basis(std::move(rows), ncols);

    StructureSolutionSpace space;
    space.sign = sign;
    for (const auto& kv : kernel) {
        auto dense = sparse_to_dense(kv, ncols);
        BilinearStructure st;
        st.kind = kind;
        st.sign = sign;
        st.host = m;
        st.b0 = PolyMatrix(r, r, vars);
        st.b1 = PolyMatrix(r, r, vars);
        for (std::size_t block = 0; block < 2; ++block)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    std::vector<Polynomial::Term> terms;
                    for (std::size_t mk = 0; mk < mons.size(); ++mk) {
                        const Rat& c = dense[((block * r + i) * r + j) * mons.size() + mk];
                        if (!mfk::is_zero(c)) terms.emplace_back(mons[mk], c);
                    }
                    (block == 0 ? st.b0 : st.b1).at(i, j) =
                        Polynomial::from_terms(vars, std::move(terms));
                }
        bool inv = st.b0.invertible_at_origin() && st.b1.invertible_at_origin();
        space.basis.push_back({std::move(st), inv});
    }
    return space;
}

}  // namespace

StructureSearchResult structure_search(const MatrixFactorization& m, StructureKind kind,
                                       std::uint32_t max_degree) {
    StructureSearchResult res;
    res.plus = search_one_sign(m, kind, +1, max_degree);
    res.minus = search_one_sign(m, kind, -1, max_degree);
    return res;
}

Example2Classification classify_example2(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& nh, std::uint32_t max_degree) {
    if (nh.size() > 4)
        throw InvalidArgumentError("classify_example2 supports up to four tensor factors");
    MatrixFactorization m = mf_brieskorn(nh);

    Example2Classification out;
    bool found = false;
    for (StructureKind kind : {StructureKind::Untwisted, StructureKind::Twisted}) {
        StructureSearchResult deg0 = structure_search(m, kind, 0);
        StructureSearchResult full =
            max_degree == 0 ? deg0 : structure_search(m, kind, max_degree);
        for (const StructureSolutionSpace* space : {&full.plus, &full.minus}) {
            auto witness = space->invertible_element();
            if (!witness) continue;
            if (found)
                throw Error("classify_example2: invertible structures of more than one type");
            const StructureSolutionSpace& zero_space = space->sign > 0 ? deg0.plus : deg0.minus;
            if (zero_space.dim() != 1)
                throw Error("classify_example2: constant solution space has dimension " +
                            std::to_string(zero_space.dim()) + ", expected 1");
            out.kind = kind;
            out.sign = space->sign;
            out.witness = *witness;
            out.constant_solution_dim = zero_space.dim();
            found = true;
        }
    }
    if (!found) throw Error("classify_example2: no invertible structure found");
    return out;
}

}  // namespace mfk
