#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mfk/polymatrix.hpp"

namespace mfk {

// A pair of square polynomial matrices with a declared potential. The type
// itself does not enforce the factorization identities; verify() reports
// violations so that broken inputs can be diagnosed rather than rejected.
struct MatrixFactorization {
    PolyMatrix phi;  // M0 -> M1
    PolyMatrix psi;  // M1 -> M0
    Polynomial potential;

    std::size_t rank() const { return phi.rows(); }
    const VarListPtr& vars() const { return phi.vars(); }
};

struct Violation {
    std::string identity;
    std::size_t row = 0, col = 0;
    std::string detail;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
    std::string to_string() const;
};

// Checks phi psi = psi phi = w * 1 and phi(0) = psi(0) = 0, entry by entry.
VerifyReport verify(const MatrixFactorization& m);

// Merged variable list: a's names in order, then b's new ones.
VarListPtr merge_vars(const VarListPtr& a, const VarListPtr& b);

// The shift M[1] = (-psi, -phi).
MatrixFactorization shift(const MatrixFactorization& m);
// M^T = (t_psi, t_phi).
MatrixFactorization transpose_dual(const MatrixFactorization& m);
// M^* = (-t_phi, -t_psi) = shift(transpose_dual(m)).
MatrixFactorization dual(const MatrixFactorization& m);

// Block-diagonal sum; potentials must agree.
MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);

// Graded tensor product via Kronecker blocks; the potential is w + w'.
// Variable lists are merged (shared names identified).
MatrixFactorization tensor(const MatrixFactorization& a, const MatrixFactorization& b);

// Gauge pair (S, T) acting by (phi, psi) -> (T phi S^-1, S psi T^-1); both
// matrices must be invertible at the origin.
struct GaugePair {
    PolyMatrix s, t;
};

struct GaugeResult {
    MatrixFactorization mf;
    bool exact;  // false when a power-series inverse was truncated
    std::uint32_t truncation_degree;
};

GaugeResult gauge(const MatrixFactorization& m, const GaugePair& g,
                  std::uint32_t truncation_degree);

// Cokernel presentation of phi over R/(w) with the dimensions of the
// degree-filtered pieces up to the bound.
struct CokPresentation {
    PolyMatrix presentation;          // phi reduced modulo (w)
    std::vector<std::size_t> hilbert; // hilbert[e] = dim of the degree-e slice
    std::uint32_t degree_bound;
};

CokPresentation cok_presentation(const MatrixFactorization& m, std::uint32_t degree_bound);

// The rank p+q factorization diag(x 1_p, y 1_q), diag(y 1_p, x 1_q) of xy.
MatrixFactorization mf_xy(std::size_t p, std::size_t q);
MatrixFactorization mf_xy(std::size_t p, std::size_t q, const VarListPtr& vars);

// Iterated tensor of the rank-one factors (x_i^{n_i}, x_i^{h_i - n_i}) of
// x_i^{h_i}; potential is the Brieskorn sum.
MatrixFactorization mf_brieskorn(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& nh);

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

enum class Parity { Even, Odd };

inline Parity opposite(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

// Block pair of a graded map between factorizations.
//   even: s: M0 -> M0',  t: M1 -> M1'
//   odd:  s: M0 -> M1',  t: M1 -> M0'
struct MorphismPair {
    MatrixFactorization source, target;
    Parity parity = Parity::Even;
    PolyMatrix s, t;
};

MorphismPair identity_morphism(const MatrixFactorization& m);
// Composition f after g (g: A -> B, f: B -> C).
MorphismPair compose(const MorphismPair& f, const MorphismPair& g);
bool morphism_blocks_zero(const MorphismPair& f);
MorphismPair morphism_sub(const MorphismPair& a, const MorphismPair& b);

}  // namespace mfk
