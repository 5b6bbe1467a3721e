#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfk/errors.hpp"
#include "mfk/monomial.hpp"
#include "mfk/order.hpp"
#include "mfk/rational.hpp"

namespace mfk {

// Immutable, shared list of variable names. Polynomials over the same list
// share one instance; equality is by content so independently parsed
// documents interoperate.
class VarList {
public:
    explicit VarList(std::vector<std::string> names);

    std::size_t arity() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index(std::string_view name) const;

    bool operator==(const VarList& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using VarListPtr = std::shared_ptr<const VarList>;

VarListPtr make_vars(std::vector<std::string> names);
bool same_vars(const VarListPtr& a, const VarListPtr& b);

// Exact multivariate polynomial over the rationals, in canonical form:
// terms sorted (ascending degrevlex), no zero coefficients. Two polynomials
// over equal variable lists are equal iff their term vectors agree.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rat>;

    Polynomial() = default;
    explicit Polynomial(VarListPtr vars) : vars_(std::move(vars)) {}

    static Polynomial zero(VarListPtr vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(VarListPtr vars, const Rat& c);
    static Polynomial variable(VarListPtr vars, std::size_t i, std::uint32_t power = 1);
    static Polynomial monomial(VarListPtr vars, Monomial m, const Rat& c);
    // Builds from an unnormalized term list (merges duplicates, drops zeros).
    static Polynomial from_terms(VarListPtr vars, std::vector<Term> terms);

    const VarListPtr& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    // Coefficient of the constant monomial, i.e. the value at the origin.
    Rat constant_term() const;
    Rat coeff(const Monomial& m) const;
    std::uint32_t total_degree() const;  // 0 for the zero polynomial

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rat& c) const;
    Polynomial mul_monomial(const Monomial& m, const Rat& c) const;
    Polynomial pow(std::uint32_t k) const;

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const;

    Polynomial derivative(std::size_t var) const;
    // Maps this polynomial into a larger variable list; every current name
    // must occur there.
    Polynomial lifted(const VarListPtr& target) const;
    // Substitutes image polynomials (over the target list) for variables.
    Polynomial substituted(const VarListPtr& target,
                           const std::vector<Polynomial>& images) const;
    // Convenience: x_i -> -x_i for the flagged variables.
    Polynomial with_flipped_signs(const std::vector<bool>& flip) const;
    // Drops all terms of total degree above the bound.
    Polynomial truncated(std::uint32_t max_degree) const;

    // Leading term with respect to a term order; polynomial must be nonzero.
    const Term& leading_term(const MonomialOrder& ord) const;

    // Leading-term-first human/machine readable form; parse(to_string()) is
    // the identity.
    std::string to_string() const;

private:
    void check_same_vars(const Polynomial& o) const;

    VarListPtr vars_;
    std::vector<Term> terms_;
};

// Parses the shared polynomial text syntax: identifiers as variables,
// integer or a/b coefficients, + - * ^ and parentheses.
Polynomial parse_polynomial(const std::string& text, const VarListPtr& vars);

}  // namespace mfk
