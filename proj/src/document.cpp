#include "mfk/document.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mfk {

const InputDocument::MfEntry* InputDocument::find_mf(const std::string& name) const {
    for (const auto& e : mfs)
        if (e.name == name) return &e;
    return nullptr;
}

const InputDocument::StructureEntry* InputDocument::find_structure(
    const std::string& name) const {
    for (const auto& e : structures)
        if (e.name == name) return &e;
    return nullptr;
}

const InputDocument::MorphismEntry* InputDocument::find_morphism(const std::string& name) const {
    for (const auto& e : morphisms)
        if (e.name == name) return &e;
    return nullptr;
}

bool InputDocument::operator==(const InputDocument& o) const {
    if (!same_vars(vars, o.vars)) return false;
    if (potentials.size() != o.potentials.size() || mfs.size() != o.mfs.size() ||
        structures.size() != o.structures.size() || morphisms.size() != o.morphisms.size())
        return false;
    for (std::size_t i = 0; i < potentials.size(); ++i) {
        if (potentials[i].name != o.potentials[i].name) return false;
        if (!(potentials[i].poly == o.potentials[i].poly)) return false;
    }
    for (std::size_t i = 0; i < mfs.size(); ++i) {
        const auto& a = mfs[i];
        const auto& b = o.mfs[i];
        if (a.name != b.name || a.potential_name != b.potential_name) return false;
        if (!(a.mf.phi == b.mf.phi) || !(a.mf.psi == b.mf.psi) ||
            !(a.mf.potential == b.mf.potential))
            return false;
    }
    for (std::size_t i = 0; i < structures.size(); ++i) {
        const auto& a = structures[i];
        const auto& b = o.structures[i];
        if (a.name != b.name || a.host != b.host) return false;
        if (a.structure.kind != b.structure.kind || a.structure.sign != b.structure.sign)
            return false;
        if (!(a.structure.b0 == b.structure.b0) || !(a.structure.b1 == b.structure.b1))
            return false;
    }
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
        const auto& a = morphisms[i];
        const auto& b = o.morphisms[i];
        if (a.name != b.name || a.from != b.from || a.to != b.to || a.degree != b.degree)
            return false;
        if (!(a.morphism.s == b.morphism.s) || !(a.morphism.t == b.morphism.t)) return false;
    }
    return true;
}

namespace {

class DocParser {
public:
    explicit DocParser(const std::string& text) : s_(text) {}

    InputDocument parse() {
        InputDocument doc;
        expect_keyword("vars");
        expect_punct(':');
        // Variable names run to the end of the line.
        std::vector<std::string> names;
        for (;;) {
            while (pos_ < s_.size() &&
                   (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r'))
                advance(s_[pos_]);
            if (pos_ >= s_.size() || s_[pos_] == '\n' || s_[pos_] == '#') break;
            if (!std::isalpha(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '_')
                fail("expected variable name");
            names.push_back(read_ident());
        }
        if (names.empty()) fail("expected at least one variable name");
        doc.vars = make_vars(names);

        for (;;) {
            skip_space();
            if (eof()) break;
            std::string kw = read_ident();
            if (kw == "potential")
                parse_potential(doc);
            else if (kw == "mf")
                parse_mf(doc);
            else if (kw == "structure")
                parse_structure(doc);
            else if (kw == "morphism")
                parse_morphism(doc);
            else
                fail("expected 'potential', 'mf', 'structure' or 'morphism', got '" + kw + "'");
        }
        return doc;
    }

private:
    // ----- low-level scanning ------------------------------------------------
    void advance(char c) {
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance(s_[pos_]);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(c);
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos_ >= s_.size();
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    bool peek_ident() {
        skip_space();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string read_ident() {
        skip_space();
        if (!peek_ident()) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                advance(c);
            else
                break;
        }
        return s_.substr(start, pos_ - start);
    }

    void expect_keyword(const std::string& kw) {
        std::string got = read_ident();
        if (got != kw) fail("expected '" + kw + "', got '" + got + "'");
    }

    char peek_punct() {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect_punct(char c) {
        skip_space();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        advance(c);
    }

    bool accept_punct(char c) {
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == c) {
            advance(c);
            return true;
        }
        return false;
    }

    std::string read_quoted() {
        skip_space();
        if (pos_ >= s_.size() || s_[pos_] != '"') fail("expected quoted name");
        advance('"');
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '"' && s_[pos_] != '\n') advance(s_[pos_]);
        if (pos_ >= s_.size() || s_[pos_] != '"') fail("unterminated quoted name");
        std::string name = s_.substr(start, pos_ - start);
        advance('"');
        if (name.empty()) fail("empty name");
        return name;
    }

    // Raw polynomial text up to a terminator at paren depth zero.
    Polynomial read_poly(const VarListPtr& vars, const std::string& terms) {
        skip_space();
        int pline = line_, pcol = col_;
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == '#') break;
            if (depth == 0 && terms.find(c) != std::string::npos) break;
            advance(c);
        }
        std::string text = s_.substr(start, pos_ - start);
        try {
            return parse_polynomial(text, vars);
        } catch (const ParseError& pe) {
            throw ParseError(pe.what(), pline, pcol);
        }
    }

    Polynomial read_poly_line(const VarListPtr& vars) { return read_poly(vars, "\n"); }

    PolyMatrix read_matrix(const VarListPtr& vars) {
        expect_punct('[');
        std::vector<std::vector<Polynomial>> rows;
        for (;;) {
            expect_punct('[');
            std::vector<Polynomial> row;
            for (;;) {
                row.push_back(read_poly(vars, ",]"));
                if (accept_punct(',')) continue;
                expect_punct(']');
                break;
            }
            if (!rows.empty() && rows.front().size() != row.size())
                fail("matrix row length mismatch");
            rows.push_back(std::move(row));
            if (accept_punct(',')) continue;
            expect_punct(']');
            break;
        }
        PolyMatrix m(rows.size(), rows.front().size(), vars);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
        return m;
    }

    // ----- sections ----------------------------------------------------------
    void parse_potential(InputDocument& doc) {
        std::string name;
        if (peek_punct() == '"') name = read_quoted();
        expect_punct(':');
        for (const auto& p : doc.potentials)
            if (p.name == name)
                fail(name.empty() ? "duplicate default potential"
                                  : "duplicate potential name '" + name + "'");
        Polynomial poly = read_poly_line(doc.vars);
        doc.potentials.push_back({name, std::move(poly)});
    }

    const Polynomial& resolve_potential(const InputDocument& doc, const std::string& name) {
        for (const auto& p : doc.potentials)
            if (p.name == name) return p.poly;
        fail(name.empty() ? "no default potential declared"
                          : "undefined potential '" + name + "'");
    }

    void parse_mf(InputDocument& doc) {
        std::string name = read_quoted();
        if (doc.find_mf(name)) fail("duplicate mf name '" + name + "'");
        std::string pot_name;
        skip_space();
        if (peek_ident()) {
            expect_keyword("potential");
            pot_name = read_quoted();
        }
        const Polynomial& w = resolve_potential(doc, pot_name);
        expect_punct('{');
        expect_keyword("phi");
        expect_punct(':');
        PolyMatrix phi = read_matrix(doc.vars);
        accept_punct(';');
        expect_keyword("psi");
        expect_punct(':');
        PolyMatrix psi = read_matrix(doc.vars);
        accept_punct(';');
        expect_punct('}');
        if (phi.rows() != phi.cols() || psi.rows() != psi.cols() || phi.rows() != psi.rows())
            fail("mf blocks must be square matrices of one size");
        doc.mfs.push_back({name, pot_name, {std::move(phi), std::move(psi), w}});
    }

    void parse_structure(InputDocument& doc) {
        std::string name = read_quoted();
        if (doc.find_structure(name)) fail("duplicate structure name '" + name + "'");
        expect_keyword("on");
        std::string host = read_quoted();
        const auto* mf_entry = doc.find_mf(host);
        if (!mf_entry) fail("structure host '" + host + "' is not a declared mf");
        expect_punct('{');
        expect_keyword("kind");
        expect_punct(':');
        std::string kind = read_ident();
        if (kind != "untwisted" && kind != "twisted")
            fail("kind must be 'untwisted' or 'twisted'");
        expect_punct(';');
        expect_keyword("sign");
        expect_punct(':');
        int sign = 0;
        if (accept_punct('+'))
            sign = +1;
        else if (accept_punct('-'))
            sign = -1;
        else
            fail("sign must be +1 or -1");
        expect_punct('1');
        expect_punct(';');
        expect_keyword("b0");
        expect_punct(':');
        PolyMatrix b0 = read_matrix(doc.vars);
        expect_punct(';');
        expect_keyword("b1");
        expect_punct(':');
        PolyMatrix b1 = read_matrix(doc.vars);
        accept_punct(';');
        expect_punct('}');
        const std::size_t r = mf_entry->mf.rank();
        if (b0.rows() != r || b0.cols() != r || b1.rows() != r || b1.cols() != r)
            fail("structure blocks must be square of the host rank");
        BilinearStructure st;
        st.kind = kind == "untwisted" ? StructureKind::Untwisted : StructureKind::Twisted;
        st.sign = sign;
        st.b0 = std::move(b0);
        st.b1 = std::move(b1);
        st.host = mf_entry->mf;
        doc.structures.push_back({name, host, std::move(st)});
    }

    void parse_morphism(InputDocument& doc) {
        std::string name = read_quoted();
        if (doc.find_morphism(name)) fail("duplicate morphism name '" + name + "'");
        expect_keyword("from");
        std::string from = read_quoted();
        const auto* src = doc.find_mf(from);
        if (!src) fail("morphism source '" + from + "' is not a declared mf");
        expect_keyword("to");
        std::string to = read_quoted();
        const auto* tgt = doc.find_mf(to);
        if (!tgt) fail("morphism target '" + to + "' is not a declared mf");
        expect_keyword("degree");
        std::string degree = read_ident();
        if (degree != "even" && degree != "odd") fail("degree must be 'even' or 'odd'");
        expect_punct('{');
        expect_keyword("S");
        expect_punct(':');
        PolyMatrix sblock = read_matrix(doc.vars);
        accept_punct(';');
        expect_keyword("T");
        expect_punct(':');
        PolyMatrix tblock = read_matrix(doc.vars);
        accept_punct(';');
        expect_punct('}');
        if (sblock.rows() != tgt->mf.rank() || sblock.cols() != src->mf.rank() ||
            tblock.rows() != tgt->mf.rank() || tblock.cols() != src->mf.rank())
            fail("morphism blocks must be target-rank x source-rank");
        MorphismPair f;
        f.source = src->mf;
        f.target = tgt->mf;
        f.parity = degree == "even" ? Parity::Even : Parity::Odd;
        f.s = std::move(sblock);
        f.t = std::move(tblock);
        doc.morphisms.push_back({name, from, to, degree, std::move(f)});
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace

InputDocument parse_document(const std::string& text) { return DocParser(text).parse(); }

InputDocument parse_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgumentError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

namespace {

void emit_matrix(std::ostringstream& os, const PolyMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m.at(i, j).to_string();
        }
        os << ']';
    }
    os << ']';
}

}  // namespace

std::string emit_document(const InputDocument& doc) {
    std::ostringstream os;
    os << "vars:";
    for (const auto& n : doc.vars->names()) os << ' ' << n;
    os << '\n';
    for (const auto& p : doc.potentials) {
        if (p.name.empty())
            os << "potential: " << p.poly.to_string() << '\n';
        else
            os << "potential \"" << p.name << "\": " << p.poly.to_string() << '\n';
    }
    for (const auto& e : doc.mfs) {
        os << "mf \"" << e.name << '"';
        if (!e.potential_name.empty()) os << " potential \"" << e.potential_name << '"';
        os << " {\n  phi: ";
        emit_matrix(os, e.mf.phi);
        os << "\n  psi: ";
        emit_matrix(os, e.mf.psi);
        os << "\n}\n";
    }
    for (const auto& e : doc.structures) {
        os << "structure \"" << e.name << "\" on \"" << e.host << "\" {\n";
        os << "  kind: " << kind_name(e.structure.kind) << "; sign: "
           << (e.structure.sign > 0 ? "+1" : "-1") << ";\n  b0: ";
        emit_matrix(os, e.structure.b0);
        os << ";\n  b1: ";
        emit_matrix(os, e.structure.b1);
        os << "\n}\n";
    }
    for (const auto& e : doc.morphisms) {
        os << "morphism \"" << e.name << "\" from \"" << e.from << "\" to \"" << e.to
           << "\" degree " << e.degree << " {\n  S: ";
        emit_matrix(os, e.morphism.s);
        os << "\n  T: ";
        emit_matrix(os, e.morphism.t);
        os << "\n}\n";
    }
    return os.str();
}

}  // namespace mfk
