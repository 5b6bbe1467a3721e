#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfk/polynomial.hpp"

namespace mfk {

// Ideal of a polynomial ring, given by generators and a term order.
struct Ideal {
    std::vector<Polynomial> generators;
    MonomialOrder order = MonomialOrder::degrevlex();

    VarListPtr vars() const;
};

// Quotient ring R/I presented by the reduced Groebner basis of I. When the
// quotient is a finite-dimensional vector space the standard monomials are
// enumerated; otherwise monomial_basis is empty and finite() is false.
class QuotientRing {
public:
    QuotientRing(Ideal ideal, std::vector<Polynomial> groebner,
                 std::optional<std::vector<Monomial>> monomial_basis);

    const Ideal& ideal() const { return ideal_; }
    const std::vector<Polynomial>& groebner() const { return groebner_; }
    const MonomialOrder& order() const { return ideal_.order; }
    VarListPtr vars() const { return ideal_.vars(); }

    bool finite() const { return monomial_basis_.has_value(); }
    const std::vector<Monomial>& monomial_basis() const;
    std::size_t dimension() const { return monomial_basis().size(); }

private:
    Ideal ideal_;
    std::vector<Polynomial> groebner_;
    std::optional<std::vector<Monomial>> monomial_basis_;
};

// Full normal form of p modulo a Groebner (or any marked) basis: no term of
// the result is divisible by a basis leading monomial. Deterministic.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);
Polynomial normal_form(const Polynomial& p, const QuotientRing& q);

// Buchberger with the coprimality and chain criteria, followed by
// interreduction; the result is the unique reduced basis for the order.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators,
                                       const MonomialOrder& order);

// Groebner basis plus standard-monomial enumeration.
QuotientRing make_quotient(Ideal ideal);

// Tjurina algebra R/(w, dw/dx_1, ..., dw/dx_n) of a potential. The quotient
// is finite-dimensional exactly when the singularity is isolated; callers
// inspect finite() rather than catching an error.
QuotientRing tjurina_ring(const Polynomial& w);

}  // namespace mfk
