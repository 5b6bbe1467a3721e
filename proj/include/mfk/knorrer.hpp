#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfk/bilinear.hpp"
#include "mfk/groebner.hpp"

namespace mfk {

// Result of the stabilization functor: a factorization of x y - pi built
// from the input pair, with the transported structure when one was given.
struct KnorrerOutput {
    MatrixFactorization result;
    std::string var_x, var_y;
    std::optional<BilinearStructure> structure;
    // Human-readable record: input rank, structure kind/sign mapping, and
    // any sign normalizations applied.
    std::string provenance;
};

// theta(m): blocks [[x 1, P], [Q, y 1]] and [[y 1, -P], [-Q, x 1]] over the
// input variables extended by two fresh names.
KnorrerOutput theta(const MatrixFactorization& m, const std::string& x, const std::string& y);

// theta with structure transport:
//   untwisted sign e  ->  twisted sign -e
//   twisted sign e    ->  untwisted sign e
KnorrerOutput theta(const MatrixFactorization& m, const BilinearStructure& B,
                    const std::string& x, const std::string& y);

// theta applied twice, then normalized by an equivalence and a variable
// sign flip so the potential reads x y + u v - pi exactly. An untwisted
// structure of sign e comes back untwisted of sign -e.
KnorrerOutput theta_squared(const MatrixFactorization& m, const std::string& x,
                            const std::string& y, const std::string& u, const std::string& v);
KnorrerOutput theta_squared(const MatrixFactorization& m, const BilinearStructure& B,
                            const std::string& x, const std::string& y, const std::string& u,
                            const std::string& v);

enum class VersalMode { Plain, Orthogonal, Symplectic };

std::string versal_mode_name(VersalMode mode);

// The rank-2r family over the matrix-equation base: generic matrices P, Q
// with P Q = Q P = t 1 feeding theta. Structured modes substitute
// Q = tP (orthogonal) or Q = -tP (symplectic) first. The certificate lists
// every entry of phi psi - (x y - t) 1 and psi phi - (x y - t) 1 reduced by
// the Groebner basis of the relation ideal.
struct VersalFamily {
    MatrixFactorization family;
    std::vector<std::string> base_vars;
    std::vector<Polynomial> relations;
    std::vector<Polynomial> groebner;
    std::vector<std::pair<std::string, Polynomial>> certificate;
    bool certificate_ok = false;
    std::size_t base_tangent_dim = 0;
    std::optional<Polynomial> t_eliminated;  // image of t when it reduces away
    VersalMode mode = VersalMode::Plain;
};

VersalFamily versal_family(std::size_t r, VersalMode mode);

}  // namespace mfk
