#include "mfk/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace mfk {

VarList::VarList(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw InvalidArgumentError("duplicate variable name: " + names_[i]);
}

std::optional<std::size_t> VarList::index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

VarListPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarList>(std::move(names));
}

bool same_vars(const VarListPtr& a, const VarListPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {

// Canonical storage order for term vectors. Any fixed total order works;
// degrevlex keeps printing natural (leading term = last element).
const MonomialOrder kStorage = MonomialOrder::degrevlex();

bool storage_less(const Monomial& a, const Monomial& b) { return kStorage.less(a, b); }

}  // namespace

Polynomial Polynomial::constant(VarListPtr vars, const Rat& c) {
    Polynomial p(std::move(vars));
    if (!mfk::is_zero(c)) p.terms_.emplace_back(Monomial::one(p.vars_->arity()), c);
    return p;
}

Polynomial Polynomial::variable(VarListPtr vars, std::size_t i, std::uint32_t power) {
    Polynomial p(std::move(vars));
    if (i >= p.vars_->arity()) throw InvalidArgumentError("variable index out of range");
    Monomial m(p.vars_->arity());
    m.e[i] = power;
    if (power == 0) return constant(p.vars_, 1);
    p.terms_.emplace_back(std::move(m), Rat(1));
    return p;
}

Polynomial Polynomial::monomial(VarListPtr vars, Monomial m, const Rat& c) {
    Polynomial p(std::move(vars));
    if (m.arity() != p.vars_->arity()) throw DimensionError("monomial arity mismatch");
    if (!mfk::is_zero(c)) p.terms_.emplace_back(std::move(m), c);
    return p;
}

Polynomial Polynomial::from_terms(VarListPtr vars, std::vector<Term> terms) {
    std::map<Monomial, Rat> acc;
    for (auto& [m, c] : terms) acc[m] += c;
    Polynomial p(std::move(vars));
    for (auto& [m, c] : acc) {
        if (m.arity() != p.vars_->arity()) throw DimensionError("monomial arity mismatch");
        if (!mfk::is_zero(c)) p.terms_.emplace_back(m, c);
    }
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return storage_less(a.first, b.first); });
    return p;
}

Rat Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
    return Rat(0);
}

Rat Polynomial::coeff(const Monomial& m) const {
    for (const auto& [mm, c] : terms_)
        if (mm == m) return c;
    return Rat(0);
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Polynomial::check_same_vars(const Polynomial& o) const {
    if (!same_vars(vars_, o.vars_))
        throw VarMismatchError("polynomials over different variable lists");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_vars(o);
    Polynomial r(vars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first == o.terms_[j].first) {
            Rat c = terms_[i].second + o.terms_[j].second;
            if (!mfk::is_zero(c)) r.terms_.emplace_back(terms_[i].first, std::move(c));
            ++i, ++j;
        } else if (storage_less(terms_[i].first, o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else {
            r.terms_.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::scaled(const Rat& c) const {
    if (mfk::is_zero(c)) return Polynomial(vars_);
    Polynomial r(*this);
    for (auto& [m, cc] : r.terms_) cc *= c;
    return r;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const Rat& c) const {
    if (mfk::is_zero(c)) return Polynomial(vars_);
    Polynomial r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
    // Multiplying every monomial by a fixed one preserves degrevlex order.
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_vars(o);
    if (terms_.empty() || o.terms_.empty()) return Polynomial(vars_);
    if (terms_.size() == 1) return o.mul_monomial(terms_[0].first, terms_[0].second);
    if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].first, o.terms_[0].second);
    std::map<Monomial, Rat> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
    Polynomial r(vars_);
    for (auto& [m, c] : acc)
        if (!mfk::is_zero(c)) r.terms_.emplace_back(m, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return storage_less(a.first, b.first); });
    return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
    Polynomial r = constant(vars_, 1);
    Polynomial base(*this);
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_vars(vars_, o.vars_)) return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial mm(m);
        Rat cc = c * Rat(static_cast<long>(m.e[var]));
        mm.e[var] -= 1;
        r.terms_.emplace_back(std::move(mm), std::move(cc));
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return storage_less(a.first, b.first); });
    return r;
}

Polynomial Polynomial::lifted(const VarListPtr& target) const {
    if (same_vars(vars_, target)) {
        Polynomial r(*this);
        r.vars_ = target;
        return r;
    }
    std::vector<std::size_t> map(vars_->arity());
    for (std::size_t i = 0; i < vars_->arity(); ++i) {
        auto idx = target->index(vars_->name(i));
        if (!idx) throw VarMismatchError("variable " + vars_->name(i) + " missing from target list");
        map[i] = *idx;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Monomial mm(target->arity());
        for (std::size_t i = 0; i < map.size(); ++i) mm.e[map[i]] = m.e[i];
        out.emplace_back(std::move(mm), c);
    }
    return from_terms(target, std::move(out));
}

Polynomial Polynomial::substituted(const VarListPtr& target,
                                   const std::vector<Polynomial>& images) const {
    if (images.size() != vars_->arity())
        throw DimensionError("substitution needs one image per variable");
    Polynomial r = Polynomial::zero(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.arity(); ++i)
            if (m.e[i]) t *= images[i].pow(m.e[i]);
        r += t;
    }
    return r;
}

Polynomial Polynomial::with_flipped_signs(const std::vector<bool>& flip) const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) {
        std::uint32_t parity = 0;
        for (std::size_t i = 0; i < flip.size(); ++i)
            if (flip[i]) parity += m.e[i];
        if (parity & 1) c = -c;
    }
    return r;
}

Polynomial Polynomial::truncated(std::uint32_t max_degree) const {
    Polynomial r(vars_);
    for (const auto& t : terms_)
        if (t.first.degree() <= max_degree) r.terms_.push_back(t);
    return r;
}

const Polynomial::Term& Polynomial::leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw InvalidArgumentError("leading term of zero polynomial");
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
        if (ord.less(best->first, t.first)) best = &t;
    return *best;
}

namespace {

void print_monomial(std::ostringstream& os, const Monomial& m, const VarList& vars) {
    bool first = true;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (!m.e[i]) continue;
        if (!first) os << '*';
        first = false;
        os << vars.name(i);
        if (m.e[i] > 1) os << '^' << m.e[i];
    }
}

}  // namespace

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    // Leading term first.
    for (std::size_t k = terms_.size(); k-- > 0;) {
        const auto& [m, c] = terms_[k];
        bool lead = (k + 1 == terms_.size());
        Rat a = c;
        if (lead) {
            if (sgn(a) < 0) {
                os << '-';
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        if (m.is_one()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << '*';
            print_monomial(os, m, *vars_);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

namespace {

struct PolyLexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class PolyParser {
public:
    PolyParser(std::string_view text, const VarListPtr& vars) : lex_{text}, vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (!lex_.eof()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("polynomial syntax error: " + msg, 1,
                         static_cast<int>(lex_.pos) + 1);
    }

    Polynomial expr() {
        Polynomial p = lex_.accept('-') ? -term() : term();
        for (;;) {
            if (lex_.accept('+'))
                p += term();
            else if (lex_.accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Polynomial term() {
        Polynomial p = factor();
        while (lex_.accept('*')) p *= factor();
        return p;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (lex_.accept('^')) {
            unsigned long k = integer("exponent");
            base = base.pow(static_cast<std::uint32_t>(k));
        }
        return base;
    }

    Polynomial atom() {
        char c = lex_.peek();
        if (c == '(') {
            lex_.accept('(');
            Polynomial p = expr();
            if (!lex_.accept(')')) fail("expected ')'");
            return p;
        }
        if (c == '-') {
            lex_.accept('-');
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits("number");
            if (lex_.accept('/')) {
                std::string den = digits("denominator");
                Rat q(num + "/" + den);
                if (mfk::is_zero(Rat(den))) fail("zero denominator");
                q.canonicalize();
                return Polynomial::constant(vars_, q);
            }
            return Polynomial::constant(vars_, Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = ident();
            auto idx = vars_->index(name);
            if (!idx) fail("unknown variable '" + name + "'");
            return Polynomial::variable(vars_, *idx);
        }
        fail(c ? std::string("unexpected character '") + c + "'" : "unexpected end of input");
    }

    std::string digits(const std::string& what) {
        lex_.skip_ws();
        std::size_t start = lex_.pos;
        while (lex_.pos < lex_.s.size() && std::isdigit(static_cast<unsigned char>(lex_.s[lex_.pos])))
            ++lex_.pos;
        if (lex_.pos == start) fail("expected " + what);
        return std::string(lex_.s.substr(start, lex_.pos - start));
    }

    unsigned long integer(const std::string& what) {
        std::string d = digits(what);
        if (d.size() > 6) fail(what + " out of range");
        return std::stoul(d);
    }

    std::string ident() {
        lex_.skip_ws();
        std::size_t start = lex_.pos;
        while (lex_.pos < lex_.s.size()) {
            char c = lex_.s[lex_.pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++lex_.pos;
            else
                break;
        }
        return std::string(lex_.s.substr(start, lex_.pos - start));
    }

    PolyLexer lex_;
    VarListPtr vars_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VarListPtr& vars) {
    return PolyParser(text, vars).parse();
}

}  // namespace mfk
