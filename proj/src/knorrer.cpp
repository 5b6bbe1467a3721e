#include "mfk/knorrer.hpp"

#include <sstream>

namespace mfk {

namespace {

VarListPtr extend_vars(const VarListPtr& vars, const std::vector<std::string>& fresh) {
    std::vector<std::string> names = vars->names();
    for (const auto& n : fresh) {
        if (vars->index(n))
            throw InvalidArgumentError("fresh variable '" + n + "' collides with the input list");
        names.push_back(n);
    }
    return make_vars(std::move(names));
}

MatrixFactorization theta_blocks(const MatrixFactorization& m, const VarListPtr& vars,
                                 const Polynomial& x, const Polynomial& y) {
    const std::size_t r = m.rank();
    PolyMatrix p = m.phi.lifted(vars);
    PolyMatrix q = m.psi.lifted(vars);
    PolyMatrix xi = PolyMatrix::scalar(r, x);
    PolyMatrix yi = PolyMatrix::scalar(r, y);
    PolyMatrix phi = PolyMatrix::block2x2(xi, p, q, yi);
    PolyMatrix psi = PolyMatrix::block2x2(yi, -p, -q, xi);
    Polynomial w = x * y - m.potential.lifted(vars);
    return {std::move(phi), std::move(psi), std::move(w)};
}

BilinearStructure transport_structure(const BilinearStructure& B,
                                      const MatrixFactorization& host, const VarListPtr& vars) {
    const std::size_t r = B.host.rank();
    PolyMatrix b0 = B.b0.lifted(vars), b1 = B.b1.lifted(vars);
    PolyMatrix z = PolyMatrix::zero(r, r, vars);
    BilinearStructure out;
    out.host = host;
    if (B.kind == StructureKind::Untwisted) {
        // untwisted (b0, b1, e) -> twisted of sign -e with both blocks
        // [[0, b0], [b1, 0]].
        out.kind = StructureKind::Twisted;
        out.sign = -B.sign;
        out.b0 = PolyMatrix::block2x2(z, b0, b1, z);
        out.b1 = out.b0;
    } else {
        // twisted (q0, q1, e) -> untwisted of sign e with diag(q1, q0) and
        // its negative.
        out.kind = StructureKind::Untwisted;
        out.sign = B.sign;
        out.b0 = PolyMatrix::block_diag(b1, b0);
        out.b1 = -out.b0;
    }
    VerifyReport rep = verify_structure(out);
    if (!rep.valid())
        throw Error("theta structure transport failed verification: " + rep.to_string());
    return out;
}

}  // namespace

KnorrerOutput theta(const MatrixFactorization& m, const std::string& x, const std::string& y) {
    VarListPtr vars = extend_vars(m.vars(), {x, y});
    Polynomial px = Polynomial::variable(vars, *vars->index(x));
    Polynomial py = Polynomial::variable(vars, *vars->index(y));
    KnorrerOutput out;
    out.result = theta_blocks(m, vars, px, py);
    out.var_x = x;
    out.var_y = y;
    std::ostringstream prov;
    prov << "theta of rank-" << m.rank() << " input; potential " << x << "*" << y << " - pi";
    out.provenance = prov.str();
    return out;
}

KnorrerOutput theta(const MatrixFactorization& m, const BilinearStructure& B,
                    const std::string& x, const std::string& y) {
    KnorrerOutput out = theta(m, x, y);
    out.structure = transport_structure(B, out.result, out.result.vars());
    std::ostringstream prov;
    prov << out.provenance << "; structure " << kind_name(B.kind)
         << (B.sign > 0 ? "(+1)" : "(-1)") << " -> " << kind_name(out.structure->kind)
         << (out.structure->sign > 0 ? "(+1)" : "(-1)");
    out.provenance = prov.str();
    return out;
}

namespace {

// The equivalence (phi, psi) -> (psi, -phi) onto factorizations of -w,
// swapping the graded pieces. Structures follow with kind and sign intact.
MatrixFactorization negate_potential(const MatrixFactorization& m) {
    return {m.psi, -m.phi, -m.potential};
}

BilinearStructure negate_potential_structure(const BilinearStructure& B,
                                             const MatrixFactorization& host) {
    BilinearStructure out;
    out.host = host;
    out.kind = B.kind;
    out.sign = B.sign;
    if (B.kind == StructureKind::Untwisted) {
        out.b0 = B.b1;
        out.b1 = B.b0;
    } else {
        out.b0 = -B.b1;
        out.b1 = B.b0;
    }
    return out;
}

// x_i -> -x_i on one variable.
std::vector<bool> flip_mask(const VarListPtr& vars, const std::string& name) {
    std::vector<bool> mask(vars->arity(), false);
    mask[*vars->index(name)] = true;
    return mask;
}

MatrixFactorization flip_variable(const MatrixFactorization& m, const std::vector<bool>& mask) {
    MatrixFactorization out = m;
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j) {
            out.phi.at(i, j) = m.phi.at(i, j).with_flipped_signs(mask);
            out.psi.at(i, j) = m.psi.at(i, j).with_flipped_signs(mask);
        }
    out.potential = m.potential.with_flipped_signs(mask);
    return out;
}

PolyMatrix flip_variable(const PolyMatrix& b, const std::vector<bool>& mask) {
    PolyMatrix out = b;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out.at(i, j) = b.at(i, j).with_flipped_signs(mask);
    return out;
}

}  // namespace

KnorrerOutput theta_squared(const MatrixFactorization& m, const std::string& x,
                            const std::string& y, const std::string& u, const std::string& v) {
    // Literal composition gives potential uv - (xy - pi); the grade-swap
    // equivalence onto the negated potential and the flip u -> -u present
    // it as xy + uv - pi.
    KnorrerOutput first = theta(m, x, y);
    KnorrerOutput second = theta(first.result, u, v);
    MatrixFactorization swapped = negate_potential(second.result);
    auto mask = flip_mask(swapped.vars(), u);
    KnorrerOutput out;
    out.result = flip_variable(swapped, mask);
    out.var_x = u;
    out.var_y = v;
    std::ostringstream prov;
    prov << "theta applied twice with (" << x << "," << y << ") then (" << u << "," << v
         << "); normalized by the grade-swap equivalence onto the negated potential and the "
            "substitution "
         << u << " -> -" << u;
    out.provenance = prov.str();
    return out;
}

KnorrerOutput theta_squared(const MatrixFactorization& m, const BilinearStructure& B,
                            const std::string& x, const std::string& y, const std::string& u,
                            const std::string& v) {
    KnorrerOutput first = theta(m, B, x, y);
    KnorrerOutput second = theta(first.result, *first.structure, u, v);
    MatrixFactorization swapped = negate_potential(second.result);
    BilinearStructure st = negate_potential_structure(*second.structure, swapped);
    auto mask = flip_mask(swapped.vars(), u);

    KnorrerOutput out;
    out.result = flip_variable(swapped, mask);
    out.var_x = u;
    out.var_y = v;
    BilinearStructure flipped = st;
    flipped.host = out.result;
    flipped.b0 = flip_variable(st.b0, mask);
    flipped.b1 = flip_variable(st.b1, mask);
    VerifyReport rep = verify_structure(flipped);
    if (!rep.valid())
        throw Error("theta_squared structure failed verification: " + rep.to_string());
    out.structure = flipped;
    std::ostringstream prov;
    prov << "theta twice with structure " << kind_name(B.kind)
         << (B.sign > 0 ? "(+1)" : "(-1)") << " -> " << kind_name(flipped.kind)
         << (flipped.sign > 0 ? "(+1)" : "(-1)")
         << "; normalized by the grade-swap equivalence and " << u << " -> -" << u;
    out.provenance = prov.str();
    return out;
}

std::string versal_mode_name(VersalMode mode) {
    switch (mode) {
        case VersalMode::Plain:
            return "plain";
        case VersalMode::Orthogonal:
            return "orthogonal";
        case VersalMode::Symplectic:
            return "symplectic";
    }
    return "?";
}

VersalFamily versal_family(std::size_t r, VersalMode mode) {
    if (r < 1 || r > 2)
        throw InvalidArgumentError("versal_family supports ranks 1 and 2");

    // Variable order: t first so an elimination order can remove it.
    std::vector<std::string> names{"t"};
    const bool structured = mode != VersalMode::Plain;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            names.push_back("p" + std::to_string(i + 1) + std::to_string(j + 1));
    if (!structured)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                names.push_back("q" + std::to_string(i + 1) + std::to_string(j + 1));
    std::vector<std::string> base_names = names;
    names.push_back("x");
    names.push_back("y");
    VarListPtr vars = make_vars(names);

    auto var = [&](const std::string& n) { return Polynomial::variable(vars, *vars->index(n)); };

    PolyMatrix p(r, r, vars), q(r, r, vars);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            std::string pij = "p" + std::to_string(i + 1) + std::to_string(j + 1);
            p.at(i, j) = var(pij);
            if (structured) {
                // Adjoint with the constant quadratic structure is the plain
                // transpose; the symplectic mode flips its sign.
                std::string pji = "p" + std::to_string(j + 1) + std::to_string(i + 1);
                q.at(i, j) = mode == VersalMode::Orthogonal ? var(pji) : -var(pji);
            } else {
                q.at(i, j) = var("q" + std::to_string(i + 1) + std::to_string(j + 1));
            }
        }

    Polynomial t = var("t");
    PolyMatrix t_id = PolyMatrix::scalar(r, t);
    PolyMatrix rel1 = p * q - t_id;
    PolyMatrix rel2 = q * p - t_id;

    VersalFamily fam;
    fam.mode = mode;
    fam.base_vars = base_names;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (!rel1.at(i, j).is_zero()) fam.relations.push_back(rel1.at(i, j));
            if (!rel2.at(i, j).is_zero()) fam.relations.push_back(rel2.at(i, j));
        }

    // Deduplicate identical relations (PQ and QP coincide for r = 1 and in
    // the structured rank-1 case).
    std::vector<Polynomial> unique_rel;
    for (const auto& rel : fam.relations) {
        bool seen = false;
        for (const auto& u : unique_rel)
            if (u == rel) seen = true;
        if (!seen) unique_rel.push_back(rel);
    }
    fam.relations = unique_rel;

    Ideal ideal;
    ideal.generators = fam.relations;
    ideal.order = MonomialOrder::eliminating(1);
    fam.groebner = groebner_basis(ideal.generators, ideal.order);

    // theta of the generic pair.
    Polynomial x = var("x"), y = var("y");
    PolyMatrix xi = PolyMatrix::scalar(r, x), yi = PolyMatrix::scalar(r, y);
    fam.family.phi = PolyMatrix::block2x2(xi, p, q, yi);
    fam.family.psi = PolyMatrix::block2x2(yi, -p, -q, xi);
    fam.family.potential = x * y - t;

    // Certificate: all entries of phi psi - (xy - t) 1 and psi phi - ... must
    // reduce to zero modulo the relation ideal.
    PolyMatrix w_id = PolyMatrix::scalar(2 * r, fam.family.potential);
    PolyMatrix c1 = fam.family.phi * fam.family.psi - w_id;
    PolyMatrix c2 = fam.family.psi * fam.family.phi - w_id;
    fam.certificate_ok = true;
    auto reduce_block = [&](const PolyMatrix& c, const std::string& label) {
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) {
                Polynomial nf = normal_form(c.at(i, j), fam.groebner, ideal.order);
                std::ostringstream os;
                os << label << "[" << i << "][" << j << "]";
                if (!nf.is_zero()) fam.certificate_ok = false;
                fam.certificate.emplace_back(os.str(), std::move(nf));
            }
    };
    reduce_block(c1, "phi*psi-(x*y-t)*1");
    reduce_block(c2, "psi*phi-(x*y-t)*1");

    // Base tangent dimension: base variables minus independent linear parts
    // of the relations.
    QMat linear(fam.relations.size(), base_names.size());
    for (std::size_t k = 0; k < fam.relations.size(); ++k)
        for (const auto& [mon, c] : fam.relations[k].terms())
            if (mon.degree() == 1)
                for (std::size_t v = 0; v < base_names.size(); ++v)
                    if (mon.e[v] == 1) linear.at(k, v) = c;
    fam.base_tangent_dim = base_names.size() - rank(linear);

    // Elimination of t when its normal form is t-free.
    Polynomial nf_t = normal_form(t, fam.groebner, ideal.order);
    bool t_free = true;
    for (const auto& [mon, c] : nf_t.terms())
        if (mon.e[0] > 0) t_free = false;
    if (t_free) fam.t_eliminated = nf_t;

    return fam;
}

}  // namespace mfk
