#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "mfk/bilinear.hpp"
#include "mfk/mf.hpp"

namespace mfk {

// Graded commutator D(f) = Q' f - (-1)^|f| f Q; output has opposite parity.
MorphismPair differential(const MorphismPair& f);

// Ext of a pair of factorizations with equal potential: cocycles modulo
// coboundaries, computed exactly on entries of bounded degree with the
// bound raised until the dimensions stabilize.
struct ExtResult {
    std::array<std::size_t, 2> dims{0, 0};  // (Ext^0, Ext^1)
    std::vector<MorphismPair> basis_even;
    std::vector<MorphismPair> basis_odd;
    std::uint32_t truncation_degree = 0;
    bool stabilized = false;
    std::vector<std::array<std::size_t, 2>> history;  // dims at degree 0, 1, ...
};

ExtResult ext(const MatrixFactorization& m, const MatrixFactorization& m2,
              std::uint32_t max_degree = 12, std::uint32_t window = 2);

// Dimensions of the selfadjoint (+) and anti-selfadjoint (-) parts of Ext
// under f -> f^adj for a structure on m.
struct AdjointSplit {
    std::size_t ext0_plus = 0, ext0_minus = 0;
    std::size_t ext1_plus = 0, ext1_minus = 0;
    ExtResult ext;
    // Involution matrices on the chosen Ext bases (even then odd).
    QMat involution_even, involution_odd;
};

AdjointSplit ext_adjoint_split(const MatrixFactorization& m, const BilinearStructure& B,
                               std::uint32_t max_degree = 12, std::uint32_t window = 2);

// Witness check for a homotopy equivalence: f, g closed even morphisms with
// g f - 1 = D(h) and f g - 1 = D(h').
struct WitnessReport {
    bool valid = false;
    std::vector<std::string> failures;
};

WitnessReport verify_equivalence_witness(const MatrixFactorization& m,
                                         const MatrixFactorization& m2, const MorphismPair& f,
                                         const MorphismPair& g, const MorphismPair& h,
                                         const MorphismPair& h2);

// Internal helpers shared with the deformation solver.
namespace detail {

// Monomials of total degree <= bound, sorted by (degree, storage order) so
// a smaller bound's list is a prefix of a larger one's.
std::vector<Monomial> monomials_up_to(std::size_t arity, std::uint32_t bound);

// Coefficient-space indexing of morphism blocks with bounded entry degree.
class MorphismIndexer {
public:
    MorphismIndexer(std::size_t target_rank, std::size_t source_rank,
                    std::vector<Monomial> mons);

    std::size_t target_rank() const { return target_rank_; }
    std::size_t source_rank() const { return source_rank_; }
    const std::vector<Monomial>& mons() const { return mons_; }

    std::size_t size() const { return 2 * target_rank_ * source_rank_ * mons_.size(); }
    int index(std::size_t block, std::size_t i, std::size_t j, std::size_t mono) const {
        return static_cast<int>(((block * target_rank_ + i) * source_rank_ + j) * mons_.size() +
                                mono);
    }
    // Position of a monomial in the list; -1 if absent.
    int mono_index(const Monomial& m) const;

private:
    std::size_t target_rank_, source_rank_;
    std::vector<Monomial> mons_;
    std::map<Monomial, int> lookup_;
};

SparseVec morphism_coords(const MorphismPair& f, const MorphismIndexer& ix);
MorphismPair morphism_from_coords(const MatrixFactorization& source,
                                  const MatrixFactorization& target, Parity parity,
                                  const SparseVec& v, const MorphismIndexer& ix);

// Coordinates of parity-p cocycle classes over chosen representatives,
// modulo the coboundaries D(g) with deg g <= degree + slack.
class CocycleClassifier {
public:
    CocycleClassifier(const MatrixFactorization& m, const MatrixFactorization& m2, Parity p,
                      const std::vector<MorphismPair>& reps, std::uint32_t degree,
                      std::uint32_t slack, std::uint32_t degq);

    // Coefficients of [f] over the representatives; nullopt when f does not
    // reduce into their span at this truncation.
    std::optional<std::vector<Rat>> coords(const MorphismPair& f) const;

private:
    MorphismIndexer wspace_;
    TaggedRowSpace space_;
    std::size_t nreps_;
};

}  // namespace detail

}  // namespace mfk
