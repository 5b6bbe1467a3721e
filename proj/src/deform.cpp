#include "mfk/deform.hpp"

#include <map>

#include "mfk/groebner.hpp"

namespace mfk {

namespace {

// Multiplication operator h * 1 as an even endomorphism.
MorphismPair multiplication_morphism(const MatrixFactorization& m, const Polynomial& h) {
    MorphismPair f;
    f.source = m;
    f.target = m;
    f.parity = Parity::Even;
    f.s = PolyMatrix::scalar(m.rank(), h);
    f.t = f.s;
    return f;
}

std::uint32_t q_degree(const MatrixFactorization& m) {
    return std::max(m.phi.max_entry_degree(), m.psi.max_entry_degree());
}

}  // namespace

QExactIdeal q_exact_ideal(const MatrixFactorization& m, std::uint32_t max_degree,
                          std::uint32_t window) {
    QuotientRing tj = tjurina_ring(m.potential);
    if (!tj.finite())
        throw NonIsolatedError("q_exact_ideal: potential does not define an isolated singularity");
    const auto& mons_o = tj.monomial_basis();
    const std::size_t mu = mons_o.size();
    const std::size_t arity = m.vars()->arity();
    const std::size_t r = m.rank();
    const std::uint32_t degq = q_degree(m);
    std::uint32_t basis_deg = 0;
    for (const auto& e : mons_o) basis_deg = std::max(basis_deg, e.degree());

    QExactIdeal out;
    out.tjurina_dim = mu;

    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        // Unknowns: mu class coefficients, then odd morphism coefficients of
        // degree <= d. Equation: sum_k c_k e_k 1 - D(g) = 0, imposed on
        // every coefficient of the even morphism space.
        detail::MorphismIndexer gens{r, r, detail::monomials_up_to(arity, d)};
        detail::MorphismIndexer outspace{
            r, r, detail::monomials_up_to(arity, std::max(basis_deg, d + degq))};
        const int ncols = static_cast<int>(mu + gens.size());

        std::map<int, SparseVec> row_map;
        auto scatter_col = [&](const SparseVec& coeffs, int col) {
            for (const auto& [rid, c] : coeffs.nz) row_map[rid].nz.emplace_back(col, c);
        };
        for (std::size_t k = 0; k < mu; ++k) {
            Polynomial h = Polynomial::monomial(m.vars(), mons_o[k], Rat(1));
            scatter_col(detail::morphism_coords(multiplication_morphism(m, h), outspace),
                        static_cast<int>(k));
        }
        for (std::size_t block = 0; block < 2; ++block)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    for (std::size_t mk = 0; mk < gens.mons().size(); ++mk) {
                        MorphismPair g;
                        g.source = m;
                        g.target = m;
                        g.parity = Parity::Odd;
                        g.s = PolyMatrix(r, r, m.vars());
                        g.t = PolyMatrix(r, r, m.vars());
                        (block == 0 ? g.s : g.t).at(i, j) =
                            Polynomial::monomial(m.vars(), gens.mons()[mk], Rat(1));
                        SparseVec img = detail::morphism_coords(differential(g), outspace);
                        // -D(g)
                        for (auto& [c, x] : img.nz) x = -x;
                        scatter_col(img,
                                    static_cast<int>(mu + gens.index(block, i, j, mk)));
                    }

        std::vector<SparseVec> rows;
        rows.reserve(row_map.size());
        for (auto& [rid, v] : row_map) {
            std::sort(v.nz.begin(), v.nz.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            rows.push_back(std::move(v));
        }

        auto kernel = sparse_kernel_basis(std::move(rows), ncols);

        // Project kernel vectors onto the class coefficients.
        SparseEliminator proj(static_cast<int>(mu));
        std::vector<SparseVec> projections;
        for (const auto& kv : kernel) {
            SparseVec pv;
            for (const auto& [c, x] : kv.nz)
                if (c < static_cast<int>(mu)) pv.nz.emplace_back(c, x);
            if (!pv.empty()) projections.push_back(std::move(pv));
        }
        proj.add_rows(std::move(projections));

        out.history.push_back(proj.rank());
        out.dim = proj.rank();
        out.truncation_degree = d;
        out.basis.clear();
        for (const auto& row : proj.rows()) {
            std::vector<Polynomial::Term> terms;
            for (const auto& [c, x] : row.nz) terms.emplace_back(mons_o[c], x);
            out.basis.push_back(Polynomial::from_terms(m.vars(), std::move(terms)));
        }

        if (out.history.size() >= window) {
            bool stable = true;
            for (std::size_t k = out.history.size() - window; k < out.history.size(); ++k)
                if (out.history[k] != out.dim) stable = false;
            if (stable) {
                out.stabilized = true;
                break;
            }
        }
    }
    return out;
}

namespace {

// Coordinate vectors of the Tjurina multiplication classes in an Ext^0
// representative basis, raising the truncation until every class reduces.
std::vector<std::vector<Rat>> multiplication_coords(const MatrixFactorization& m,
                                                    const ExtResult& ext_res,
                                                    const QuotientRing& tj,
                                                    std::uint32_t max_degree) {
    const auto& reps = ext_res.basis_even;
    const std::uint32_t degq = q_degree(m);
    std::uint32_t basis_deg = 0;
    for (const auto& e : tj.monomial_basis()) basis_deg = std::max(basis_deg, e.degree());

    for (std::uint32_t d = std::max(ext_res.truncation_degree, basis_deg);
         d <= max_degree + basis_deg; ++d) {
        detail::CocycleClassifier cc(m, m, Parity::Even, reps, d, degq, degq);
        std::vector<std::vector<Rat>> coords;
        bool ok = true;
        for (const auto& e : tj.monomial_basis()) {
            Polynomial h = Polynomial::monomial(m.vars(), e, Rat(1));
            auto col = cc.coords(multiplication_morphism(m, h));
            if (!col) {
                ok = false;
                break;
            }
            coords.push_back(std::move(*col));
        }
        if (ok) return coords;
    }
    throw NonStabilizedError(
        "obstruction: multiplication classes did not reduce within the degree cap");
}

std::size_t row_rank(const std::vector<std::vector<Rat>>& rows, std::size_t width) {
    QMat a(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) a.at(i, j) = rows[i][j];
    return rank(a);
}

}  // namespace

DeformationReport tangent_dims(const MatrixFactorization& m, std::uint32_t max_degree,
                               std::uint32_t window) {
    QuotientRing tj = tjurina_ring(m.potential);
    if (!tj.finite())
        throw NonIsolatedError("tangent_dims: potential does not define an isolated singularity");

    ExtResult e = ext(m, m, max_degree, window);
    if (!e.stabilized) throw NonStabilizedError("tangent_dims: Ext did not stabilize");
    QExactIdeal ideal = q_exact_ideal(m, max_degree, window);
    if (!ideal.stabilized)
        throw NonStabilizedError("tangent_dims: Q-exact ideal did not stabilize");

    DeformationReport rep;
    rep.ext1_dim = e.dims[1];
    rep.ext0_dim = e.dims[0];
    rep.ideal_dim = ideal.dim;
    rep.tangent_dim = rep.ext1_dim + rep.ideal_dim;
    rep.fixed_potential_dim = rep.ext1_dim;
    rep.tjurina_dim = ideal.tjurina_dim;
    rep.truncation_degree = std::max(e.truncation_degree, ideal.truncation_degree);
    rep.stabilized = true;

    auto coords = multiplication_coords(m, e, tj, max_degree);
    rep.obstruction_dim = rep.ext0_dim - row_rank(coords, rep.ext0_dim);
    return rep;
}

std::size_t obstruction_dims(const MatrixFactorization& m, std::uint32_t max_degree,
                             std::uint32_t window) {
    return tangent_dims(m, max_degree, window).obstruction_dim;
}

DeformationReport tangent_dims_structured(const MatrixFactorization& m,
                                          const BilinearStructure& B, std::uint32_t max_degree,
                                          std::uint32_t window) {
    QuotientRing tj = tjurina_ring(m.potential);
    if (!tj.finite())
        throw NonIsolatedError(
            "tangent_dims_structured: potential does not define an isolated singularity");
    VerifyReport brep = verify_structure(B);
    if (!brep.valid())
        throw InvalidArgumentError("tangent_dims_structured: structure does not verify: " +
                                   brep.to_string());

    AdjointSplit split = ext_adjoint_split(m, B, max_degree, window);
    QExactIdeal ideal = q_exact_ideal(m, max_degree, window);
    if (!ideal.stabilized)
        throw NonStabilizedError("tangent_dims_structured: Q-exact ideal did not stabilize");

    DeformationReport rep;
    rep.ext1_dim = split.ext.dims[1];
    rep.ext0_dim = split.ext.dims[0];
    rep.ideal_dim = ideal.dim;
    rep.tjurina_dim = ideal.tjurina_dim;
    rep.truncation_degree = std::max(split.ext.truncation_degree, ideal.truncation_degree);
    rep.stabilized = true;

    StructuredDims sd;
    // Untwisted structures deform along the anti-selfadjoint part of Ext^1
    // and obstruct in the selfadjoint part of Ext^0; twisted structures the
    // other way around.
    const bool untwisted = B.kind == StructureKind::Untwisted;
    sd.sign_tangent = untwisted ? -1 : +1;
    sd.ext1_part = untwisted ? split.ext1_minus : split.ext1_plus;
    sd.tangent_dim = sd.ext1_part + ideal.dim;
    sd.ext0_part = untwisted ? split.ext0_plus : split.ext0_minus;

    // Obstruction: cokernel of the multiplication map followed by the
    // projection onto the signed eigenspace.
    auto coords = multiplication_coords(m, split.ext, tj, max_degree);
    const std::size_t k = rep.ext0_dim;
    const int sigma = untwisted ? +1 : -1;
    // P_sigma = (I + sigma A) / 2 applied to each coordinate vector.
    std::vector<std::vector<Rat>> projected;
    for (const auto& v : coords) {
        std::vector<Rat> pv(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            Rat acc = v[i];
            for (std::size_t j = 0; j < k; ++j)
                acc += Rat(sigma) * split.involution_even.at(i, j) * v[j];
            pv[i] = acc / 2;
        }
        projected.push_back(std::move(pv));
    }
    sd.obstruction_dim = sd.ext0_part - row_rank(projected, k);

    rep.tangent_dim = sd.tangent_dim;
    rep.fixed_potential_dim = sd.ext1_part;
    rep.obstruction_dim = sd.obstruction_dim;
    rep.structured = sd;
    return rep;
}

}  // namespace mfk
