#include "mfk/homotopy.hpp"

#include <algorithm>
#include <map>

#include "mfk/groebner.hpp"

namespace mfk {

MorphismPair differential(const MorphismPair& f) {
    if (!same_vars(f.source.vars(), f.target.vars()))
        throw VarMismatchError("differential: morphism endpoints over different variable lists");
    MorphismPair d;
    d.source = f.source;
    d.target = f.target;
    d.parity = opposite(f.parity);
    const auto& phi = f.source.phi;
    const auto& psi = f.source.psi;
    const auto& phi2 = f.target.phi;
    const auto& psi2 = f.target.psi;
    if (f.parity == Parity::Even) {
        d.s = phi2 * f.s - f.t * phi;  // M0 -> M1'
        d.t = psi2 * f.t - f.s * psi;  // M1 -> M0'
    } else {
        d.s = psi2 * f.s + f.t * phi;  // M0 -> M0'
        d.t = phi2 * f.t + f.s * psi;  // M1 -> M1'
    }
    return d;
}

namespace detail {

std::vector<Monomial> monomials_up_to(std::size_t arity, std::uint32_t bound) {
    std::vector<Monomial> out;
    Monomial cur(arity);
    auto rec = [&](auto&& self, std::size_t v, std::uint32_t left) -> void {
        if (v == arity) {
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
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    });
    return out;
}

MorphismIndexer::MorphismIndexer(std::size_t target_rank, std::size_t source_rank,
                                 std::vector<Monomial> mons)
    : target_rank_(target_rank), source_rank_(source_rank), mons_(std::move(mons)) {
    for (std::size_t k = 0; k < mons_.size(); ++k) lookup_[mons_[k]] = static_cast<int>(k);
}

int MorphismIndexer::mono_index(const Monomial& m) const {
    auto it = lookup_.find(m);
    return it == lookup_.end() ? -1 : it->second;
}

SparseVec morphism_coords(const MorphismPair& f, const MorphismIndexer& ix) {
    std::vector<std::pair<int, Rat>> entries;
    for (std::size_t block = 0; block < 2; ++block) {
        const PolyMatrix& b = block == 0 ? f.s : f.t;
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                for (const auto& [mon, c] : b.at(i, j).terms()) {
                    int k = ix.mono_index(mon);
                    if (k < 0) throw Error("morphism coefficient beyond the index window");
                    entries.emplace_back(ix.index(block, i, j, k), c);
                }
    }
    std::sort(entries.begin(), entries.end());
    SparseVec v;
    v.nz = std::move(entries);
    return v;
}

MorphismPair morphism_from_coords(const MatrixFactorization& source,
                                  const MatrixFactorization& target, Parity parity,
                                  const SparseVec& v, const MorphismIndexer& ix) {
    MorphismPair f;
    f.source = source;
    f.target = target;
    f.parity = parity;
    const VarListPtr vars = source.vars();
    std::vector<std::vector<Polynomial::Term>> terms(2 * ix.target_rank() * ix.source_rank());
    for (const auto& [col, c] : v.nz) {
        const std::size_t mono = col % ix.mons().size();
        const std::size_t rest = col / ix.mons().size();
        terms[rest].emplace_back(ix.mons()[mono], c);
    }
    f.s = PolyMatrix(ix.target_rank(), ix.source_rank(), vars);
    f.t = PolyMatrix(ix.target_rank(), ix.source_rank(), vars);
    for (std::size_t block = 0; block < 2; ++block)
        for (std::size_t i = 0; i < ix.target_rank(); ++i)
            for (std::size_t j = 0; j < ix.source_rank(); ++j) {
                auto& cell = terms[(block * ix.target_rank() + i) * ix.source_rank() + j];
                (block == 0 ? f.s : f.t).at(i, j) =
                    Polynomial::from_terms(vars, std::move(cell));
            }
    return f;
}

}  // namespace detail

namespace {

using detail::MorphismIndexer;

struct ExtDegreeData {
    std::array<std::size_t, 2> dims{0, 0};
    std::vector<MorphismPair> reps_even, reps_odd;
};

// Single-entry basis morphism.
MorphismPair unit_morphism(const MatrixFactorization& source, const MatrixFactorization& target,
                           Parity parity, std::size_t block, std::size_t i, std::size_t j,
                           const Monomial& mon) {
    MorphismPair f;
    f.source = source;
    f.target = target;
    f.parity = parity;
    const VarListPtr vars = source.vars();
    f.s = PolyMatrix(target.rank(), source.rank(), vars);
    f.t = PolyMatrix(target.rank(), source.rank(), vars);
    (block == 0 ? f.s : f.t).at(i, j) = Polynomial::monomial(vars, mon, Rat(1));
    return f;
}

// Computes Ext^p at one truncation degree, including representatives.
ExtDegreeData ext_at_degree(const MatrixFactorization& m, const MatrixFactorization& m2,
                            std::uint32_t d, std::uint32_t slack, std::uint32_t degq) {
    const std::size_t arity = m.vars()->arity();
    ExtDegreeData out;

    for (Parity p : {Parity::Even, Parity::Odd}) {
        // Unknowns: parity-p morphisms of entry degree <= d.
        MorphismIndexer unknowns{m2.rank(), m.rank(), detail::monomials_up_to(arity, d)};
        // Common coefficient space for cocycles and coboundary images.
        MorphismIndexer wspace{m2.rank(), m.rank(),
                               detail::monomials_up_to(arity, d + slack + degq)};

        // Cocycle constraints: coefficients of D(f) in the (opposite
        // parity, degree <= d + degq) space.
        MorphismIndexer cospace{m2.rank(), m.rank(), detail::monomials_up_to(arity, d + degq)};
        std::vector<SparseVec> constraint_cols;
        constraint_cols.reserve(unknowns.size());
        for (std::size_t block = 0; block < 2; ++block)
            for (std::size_t i = 0; i < m2.rank(); ++i)
                for (std::size_t j = 0; j < m.rank(); ++j)
                    for (std::size_t mk = 0; mk < unknowns.mons().size(); ++mk) {
                        MorphismPair e = unit_morphism(m, m2, p, block, i, j, unknowns.mons()[mk]);
                        constraint_cols.push_back(
                            detail::morphism_coords(differential(e), cospace));
                    }
        // Transpose the columns into rows of the constraint matrix.
        std::map<int, SparseVec> row_map;
        for (std::size_t col = 0; col < constraint_cols.size(); ++col)
            for (const auto& [rid, c] : constraint_cols[col].nz)
                row_map[rid].nz.emplace_back(static_cast<int>(col), c);
        std::vector<SparseVec> rows;
        rows.reserve(row_map.size());
        for (auto& [rid, v] : row_map) rows.push_back(std::move(v));

        auto cocycles = sparse_kernel_basis(std::move(rows), static_cast<int>(unknowns.size()));

        // Coboundary span: D(g) for opposite-parity g of degree <= d + slack.
        MorphismIndexer gens{m2.rank(), m.rank(), detail::monomials_up_to(arity, d + slack)};
        std::vector<SparseVec> boundary_rows;
        boundary_rows.reserve(gens.size());
        for (std::size_t block = 0; block < 2; ++block)
            for (std::size_t i = 0; i < m2.rank(); ++i)
                for (std::size_t j = 0; j < m.rank(); ++j)
                    for (std::size_t mk = 0; mk < gens.mons().size(); ++mk) {
                        MorphismPair g =
                            unit_morphism(m, m2, opposite(p), block, i, j, gens.mons()[mk]);
                        SparseVec img = detail::morphism_coords(differential(g), wspace);
                        if (!img.empty()) boundary_rows.push_back(std::move(img));
                    }
        SparseEliminator el(static_cast<int>(wspace.size()));
        el.add_rows(std::move(boundary_rows));

        // Cocycle coefficients live in the prefix of the W space (monomial
        // lists are sorted degree first), so reindex block by block.
        auto pad = [&](const SparseVec& z) {
            SparseVec out_v;
            out_v.nz.reserve(z.nz.size());
            for (const auto& [col, c] : z.nz) {
                const std::size_t mono = col % unknowns.mons().size();
                const std::size_t rest = col / unknowns.mons().size();
                out_v.nz.emplace_back(static_cast<int>(rest * wspace.mons().size() + mono), c);
            }
            std::sort(out_v.nz.begin(), out_v.nz.end());
            return out_v;
        };

        std::size_t dim = 0;
        auto& reps = p == Parity::Even ? out.reps_even : out.reps_odd;
        for (const auto& z : cocycles) {
            if (el.insert(pad(z))) {
                reps.push_back(detail::morphism_from_coords(m, m2, p, z, unknowns));
                ++dim;
            }
        }
        out.dims[p == Parity::Even ? 0 : 1] = dim;
    }
    return out;
}

}  // namespace

ExtResult ext(const MatrixFactorization& m, const MatrixFactorization& m2,
              std::uint32_t max_degree, std::uint32_t window) {
    if (!same_vars(m.vars(), m2.vars()))
        throw VarMismatchError("ext: factorizations over different variable lists");
    if (!(m.potential == m2.potential))
        throw InvalidArgumentError("ext: potentials must coincide");
    if (window < 1) throw InvalidArgumentError("ext: window must be positive");

    QuotientRing tj = tjurina_ring(m.potential);
    if (!tj.finite())
        throw NonIsolatedError("ext: potential does not define an isolated singularity");

    const std::uint32_t degq =
        std::max(std::max(m.phi.max_entry_degree(), m.psi.max_entry_degree()),
                 std::max(m2.phi.max_entry_degree(), m2.psi.max_entry_degree()));
    const std::uint32_t slack = degq;

    ExtResult res;
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        ExtDegreeData data = ext_at_degree(m, m2, d, slack, degq);
        res.history.push_back(data.dims);
        res.dims = data.dims;
        res.basis_even = std::move(data.reps_even);
        res.basis_odd = std::move(data.reps_odd);
        res.truncation_degree = d;
        if (res.history.size() >= window) {
            bool stable = true;
            for (std::size_t k = res.history.size() - window; k < res.history.size(); ++k)
                if (res.history[k] != res.dims) stable = false;
            if (stable) {
                res.stabilized = true;
                break;
            }
        }
    }
    return res;
}

namespace detail {

CocycleClassifier::CocycleClassifier(const MatrixFactorization& m,
                                     const MatrixFactorization& m2, Parity p,
                                     const std::vector<MorphismPair>& reps, std::uint32_t degree,
                                     std::uint32_t slack, std::uint32_t degq)
    : wspace_(m2.rank(), m.rank(),
              detail::monomials_up_to(m.vars()->arity(), degree + slack + degq)),
      space_(static_cast<int>(wspace_.size()), static_cast<int>(reps.size())),
      nreps_(reps.size()) {
    const std::size_t arity = m.vars()->arity();
    MorphismIndexer gens{m2.rank(), m.rank(), detail::monomials_up_to(arity, degree + slack)};
    for (std::size_t block = 0; block < 2; ++block)
        for (std::size_t i = 0; i < m2.rank(); ++i)
            for (std::size_t j = 0; j < m.rank(); ++j)
                for (std::size_t mk = 0; mk < gens.mons().size(); ++mk) {
                    MorphismPair g =
                        unit_morphism(m, m2, opposite(p), block, i, j, gens.mons()[mk]);
                    SparseVec img = detail::morphism_coords(differential(g), wspace_);
                    if (!img.empty()) space_.add(std::move(img), SparseVec{});
                }
    for (std::size_t k = 0; k < reps.size(); ++k) {
        SparseVec tag;
        tag.nz.emplace_back(static_cast<int>(k), Rat(1));
        space_.add(detail::morphism_coords(reps[k], wspace_), std::move(tag));
    }
}

std::optional<std::vector<Rat>> CocycleClassifier::coords(const MorphismPair& f) const {
    auto [res, tag] = space_.reduce(detail::morphism_coords(f, wspace_));
    if (!res.empty()) return std::nullopt;
    std::vector<Rat> out(nreps_, Rat(0));
    for (const auto& [k, c] : tag.nz) out[k] = -c;
    return out;
}

}  // namespace detail

AdjointSplit ext_adjoint_split(const MatrixFactorization& m, const BilinearStructure& B,
                               std::uint32_t max_degree, std::uint32_t window) {
    AdjointSplit split;
    split.ext = ext(m, m, max_degree, window);
    if (!split.ext.stabilized)
        throw NonStabilizedError("ext_adjoint_split: Ext dimensions did not stabilize");

    const std::uint32_t degq = std::max(m.phi.max_entry_degree(), m.psi.max_entry_degree());

    for (Parity p : {Parity::Even, Parity::Odd}) {
        const auto& reps = p == Parity::Even ? split.ext.basis_even : split.ext.basis_odd;
        const std::size_t k = reps.size();
        QMat invol(k, k);
        if (k > 0) {
            // Adjoints can raise entry degree when blocks are non-constant.
            std::uint32_t adeg = 0;
            std::vector<MorphismPair> adjs;
            for (const auto& f : reps) {
                MorphismPair fa = adjoint(f, B, B);
                adeg = std::max(adeg,
                                std::max(fa.s.max_entry_degree(), fa.t.max_entry_degree()));
                adjs.push_back(std::move(fa));
            }
            // Raise the coboundary window until every adjoint reduces.
            bool done = false;
            for (std::uint32_t d = std::max(split.ext.truncation_degree, adeg);
                 d <= max_degree + adeg && !done; ++d) {
                detail::CocycleClassifier cc(m, m, p, reps, d, degq, degq);
                done = true;
                for (std::size_t j = 0; j < k && done; ++j) {
                    auto col = cc.coords(adjs[j]);
                    if (!col) {
                        done = false;
                        break;
                    }
                    for (std::size_t i = 0; i < k; ++i) invol.at(i, j) = (*col)[i];
                }
            }
            if (!done)
                throw NonStabilizedError(
                    "ext_adjoint_split: adjoint classes did not reduce within the degree cap");
        }
        // Involution: eigenvalues are +1 / -1; dim of the -1 eigenspace is
        // the rank of (A - I).
        QMat shifted = invol;
        for (std::size_t i = 0; i < k; ++i) shifted.at(i, i) -= 1;
        const std::size_t minus = rank(shifted);
        QMat check = invol * invol;
        for (std::size_t i = 0; i < k; ++i) check.at(i, i) -= 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (!mfk::is_zero(check.at(i, j)))
                    throw Error("ext_adjoint_split: adjoint is not an involution on classes");
        if (p == Parity::Even) {
            split.ext0_minus = minus;
            split.ext0_plus = k - minus;
            split.involution_even = invol;
        } else {
            split.ext1_minus = minus;
            split.ext1_plus = k - minus;
            split.involution_odd = invol;
        }
    }
    return split;
}

WitnessReport verify_equivalence_witness(const MatrixFactorization& m,
                                         const MatrixFactorization& m2, const MorphismPair& f,
                                         const MorphismPair& g, const MorphismPair& h,
                                         const MorphismPair& h2) {
    WitnessReport rep;
    rep.valid = true;
    auto fail = [&rep](const std::string& msg) {
        rep.valid = false;
        rep.failures.push_back(msg);
    };
    if (f.parity != Parity::Even || g.parity != Parity::Even) fail("f and g must be even");
    if (h.parity != Parity::Odd || h2.parity != Parity::Odd) fail("h and h' must be odd");
    if (!rep.valid) return rep;

    MorphismPair df = differential(f);
    if (!morphism_blocks_zero(df)) fail("D(f) != 0: " + df.s.at(0, 0).to_string());
    MorphismPair dg = differential(g);
    if (!morphism_blocks_zero(dg)) fail("D(g) != 0");

    MorphismPair gf = compose(g, f);
    MorphismPair gf_minus_1 = morphism_sub(gf, identity_morphism(m));
    MorphismPair dh = differential(h);
    if (!morphism_blocks_zero(morphism_sub(gf_minus_1, dh))) fail("g f - 1 != D(h)");

    MorphismPair fg = compose(f, g);
    MorphismPair fg_minus_1 = morphism_sub(fg, identity_morphism(m2));
    MorphismPair dh2 = differential(h2);
    if (!morphism_blocks_zero(morphism_sub(fg_minus_1, dh2))) fail("f g - 1 != D(h')");
    return rep;
}

}  // namespace mfk
