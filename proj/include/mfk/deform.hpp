#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfk/homotopy.hpp"

namespace mfk {

// Basis of the subspace of Tjurina classes h whose multiplication operator
// h*1 is a coboundary, with the stabilization history of its dimension.
struct QExactIdeal {
    std::vector<Polynomial> basis;      // reduced representatives in the Tjurina ring
    std::size_t dim = 0;
    std::size_t tjurina_dim = 0;
    std::uint32_t truncation_degree = 0;
    bool stabilized = false;
    std::vector<std::size_t> history;
};

QExactIdeal q_exact_ideal(const MatrixFactorization& m, std::uint32_t max_degree = 12,
                          std::uint32_t window = 2);

struct StructuredDims {
    int sign_tangent = 0;       // -1: anti-selfadjoint part, +1: selfadjoint part
    std::size_t ext1_part = 0;  // dim of the signed Ext^1 part entering the tangent
    std::size_t tangent_dim = 0;
    std::size_t ext0_part = 0;  // dim of the signed Ext^0 part hosting obstructions
    std::size_t obstruction_dim = 0;
};

struct DeformationReport {
    std::size_t ext1_dim = 0;
    std::size_t ideal_dim = 0;
    std::size_t tangent_dim = 0;        // ext1_dim + ideal_dim
    std::size_t fixed_potential_dim = 0;  // tangent of the fixed-w functor = ext1_dim
    std::size_t ext0_dim = 0;
    std::size_t obstruction_dim = 0;    // coker of the Tjurina multiplication map
    std::size_t tjurina_dim = 0;
    std::uint32_t truncation_degree = 0;
    bool stabilized = false;
    std::optional<StructuredDims> structured;
};

DeformationReport tangent_dims(const MatrixFactorization& m, std::uint32_t max_degree = 12,
                               std::uint32_t window = 2);

std::size_t obstruction_dims(const MatrixFactorization& m, std::uint32_t max_degree = 12,
                             std::uint32_t window = 2);

// Structured variant: the tangent uses the anti-selfadjoint part of Ext^1
// for untwisted structures and the selfadjoint part for twisted ones;
// obstructions live in the opposite-signed part of Ext^0.
DeformationReport tangent_dims_structured(const MatrixFactorization& m,
                                          const BilinearStructure& B,
                                          std::uint32_t max_degree = 12,
                                          std::uint32_t window = 2);

}  // namespace mfk
