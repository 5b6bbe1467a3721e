#include "mfk/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "mfk/budget.hpp"
#include "mfk/deform.hpp"
#include "mfk/document.hpp"
#include "mfk/knorrer.hpp"

namespace mfk {

namespace {

using Json = nlohmann::ordered_json;

struct Usage : Error {
    using Error::Error;
};

const InputDocument::MfEntry& need_mf(const InputDocument& doc, const std::string& name) {
    if (name.empty()) throw Usage("an mf name is required");
    const auto* e = doc.find_mf(name);
    if (!e) throw Usage("unknown mf '" + name + "'");
    return *e;
}

const InputDocument::StructureEntry& need_structure(const InputDocument& doc,
                                                    const std::string& name) {
    if (name.empty()) throw Usage("a structure name is required");
    const auto* e = doc.find_structure(name);
    if (!e) throw Usage("unknown structure '" + name + "'");
    return *e;
}

Json violations_json(const VerifyReport& rep) {
    Json arr = Json::array();
    for (const auto& v : rep.violations) {
        Json o;
        o["identity"] = v.identity;
        o["row"] = v.row;
        o["col"] = v.col;
        o["value"] = v.detail;
        arr.push_back(o);
    }
    return arr;
}

void emit_record(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

// Wraps a single factorization as a document for canonical emission.
std::string mf_as_document(const MatrixFactorization& m, const std::string& name) {
    InputDocument doc;
    doc.vars = m.vars();
    doc.potentials.push_back({"w", m.potential});
    doc.mfs.push_back({name, "w", m});
    return emit_document(doc);
}

std::string structure_as_document(const BilinearStructure& st, const std::string& mf_name,
                                  const std::string& st_name) {
    InputDocument doc;
    doc.vars = st.host.vars();
    doc.potentials.push_back({"w", st.host.potential});
    doc.mfs.push_back({mf_name, "w", st.host});
    doc.structures.push_back({st_name, mf_name, st});
    return emit_document(doc);
}

Json history_json(const ExtResult& e) {
    Json h = Json::array();
    for (const auto& d : e.history) h.push_back({d[0], d[1]});
    return h;
}

int run_dispatch(const CliRequest& req, std::ostream& out) {
    const bool records = req.format == "records";
    if (req.format != "text" && req.format != "records")
        throw Usage("format must be 'text' or 'records'");

    // Commands that need no input document.
    if (req.command == "versal") {
        VersalMode mode;
        if (req.mode == "plain")
            mode = VersalMode::Plain;
        else if (req.mode == "orthogonal")
            mode = VersalMode::Orthogonal;
        else if (req.mode == "symplectic")
            mode = VersalMode::Symplectic;
        else
            throw Usage("mode must be plain, orthogonal or symplectic");
        VersalFamily fam = versal_family(req.rank_param, mode);
        if (records) {
            Json j;
            j["command"] = "versal";
            j["rank"] = req.rank_param;
            j["mode"] = versal_mode_name(fam.mode);
            j["base_vars"] = fam.base_vars;
            Json rels = Json::array();
            for (const auto& r : fam.relations) rels.push_back(r.to_string());
            j["relations"] = rels;
            j["base_tangent_dim"] = fam.base_tangent_dim;
            j["t_eliminated"] = fam.t_eliminated ? fam.t_eliminated->to_string() : "";
            j["certificate_ok"] = fam.certificate_ok;
            Json cert = Json::array();
            for (const auto& [label, nf] : fam.certificate) {
                Json c;
                c["entry"] = label;
                c["normal_form"] = nf.to_string();
                cert.push_back(c);
            }
            j["certificate"] = cert;
            emit_record(out, j);
        } else {
            out << "versal family rank " << req.rank_param << " mode "
                << versal_mode_name(fam.mode) << "\n";
            out << "base variables:";
            for (const auto& v : fam.base_vars) out << ' ' << v;
            out << "\nrelations:\n";
            for (const auto& r : fam.relations) out << "  " << r.to_string() << "\n";
            out << "base tangent dimension: " << fam.base_tangent_dim << "\n";
            if (fam.t_eliminated)
                out << "t eliminated: t = " << fam.t_eliminated->to_string() << "\n";
            out << "certificate: " << (fam.certificate_ok ? "all entries reduce to 0" : "FAILED")
                << " (" << fam.certificate.size() << " entries)\n";
            out << mf_as_document(fam.family, "versal");
        }
        return fam.certificate_ok ? 0 : 1;
    }

    if (req.command == "examples") {
        if (!req.example.empty()) {
            out << example_document(req.example);
            return 0;
        }
        if (records) {
            Json j;
            j["command"] = "examples";
            j["names"] = example_names();
            emit_record(out, j);
        } else {
            out << "bundled examples:\n";
            for (const auto& n : example_names()) out << "  " << n << "\n";
        }
        return 0;
    }

    if (req.input_path.empty()) throw Usage("this command needs an input file");
    InputDocument doc = parse_document_file(req.input_path);

    if (req.command == "verify") {
        const auto& e = need_mf(doc, req.name);
        VerifyReport rep = verify(e.mf);
        if (records) {
            Json j;
            j["command"] = "verify";
            j["name"] = e.name;
            j["valid"] = rep.valid();
            j["violations"] = violations_json(rep);
            emit_record(out, j);
        } else {
            out << (rep.valid() ? "valid" : rep.to_string());
            if (rep.valid()) out << "\n";
        }
        return rep.valid() ? 0 : 1;
    }

    if (req.command == "shift" || req.command == "dual" || req.command == "transpose-dual") {
        const auto& e = need_mf(doc, req.name);
        MatrixFactorization r = req.command == "shift"          ? shift(e.mf)
                                : req.command == "dual"         ? dual(e.mf)
                                                                : transpose_dual(e.mf);
        std::string out_name = e.name + "_" + (req.command == "shift" ? "shift" : "dual");
        if (records) {
            Json j;
            j["command"] = req.command;
            j["name"] = e.name;
            j["rank"] = r.rank();
            j["potential"] = r.potential.to_string();
            j["document"] = mf_as_document(r, out_name);
            emit_record(out, j);
        } else {
            out << mf_as_document(r, out_name);
        }
        return 0;
    }

    if (req.command == "tensor" || req.command == "direct-sum") {
        const auto& a = need_mf(doc, req.left.empty() ? req.name : req.left);
        const auto& b = need_mf(doc, req.right);
        MatrixFactorization r =
            req.command == "tensor" ? tensor(a.mf, b.mf) : direct_sum(a.mf, b.mf);
        std::string out_name = a.name + "_" + b.name;
        if (records) {
            Json j;
            j["command"] = req.command;
            j["left"] = a.name;
            j["right"] = b.name;
            j["rank"] = r.rank();
            j["potential"] = r.potential.to_string();
            j["document"] = mf_as_document(r, out_name);
            emit_record(out, j);
        } else {
            out << mf_as_document(r, out_name);
        }
        return 0;
    }

    if (req.command == "structure-verify") {
        const auto& e = need_structure(doc, req.structure.empty() ? req.name : req.structure);
        VerifyReport rep = verify_structure(e.structure);
        if (records) {
            Json j;
            j["command"] = "structure-verify";
            j["name"] = e.name;
            j["host"] = e.host;
            j["kind"] = kind_name(e.structure.kind);
            j["sign"] = e.structure.sign;
            j["valid"] = rep.valid();
            j["violations"] = violations_json(rep);
            emit_record(out, j);
        } else {
            out << (rep.valid() ? "valid" : rep.to_string());
            if (rep.valid()) out << "\n";
        }
        return rep.valid() ? 0 : 1;
    }

    if (req.command == "structure-search") {
        const auto& e = need_mf(doc, req.name);
        StructureKind kind;
        if (req.kind == "untwisted")
            kind = StructureKind::Untwisted;
        else if (req.kind == "twisted")
            kind = StructureKind::Twisted;
        else
            throw Usage("kind must be 'untwisted' or 'twisted'");
        StructureSearchResult res = structure_search(e.mf, kind, req.degree_bound);
        auto space_json = [](const StructureSolutionSpace& s) {
            Json j;
            j["sign"] = s.sign;
            j["dim"] = s.dim();
            Json inv = Json::array();
            for (const auto& c : s.basis) inv.push_back(c.invertible_at_origin);
            j["basis_invertible"] = inv;
            j["contains_invertible"] = s.contains_invertible();
            return j;
        };
        if (records) {
            Json j;
            j["command"] = "structure-search";
            j["name"] = e.name;
            j["kind"] = kind_name(kind);
            j["max_degree"] = req.degree_bound;
            j["plus"] = space_json(res.plus);
            j["minus"] = space_json(res.minus);
            emit_record(out, j);
        } else {
            out << "search " << kind_name(kind) << " structures on \"" << e.name
                << "\" up to degree " << req.degree_bound << "\n";
            out << "  sign +1: dim " << res.plus.dim()
                << (res.plus.contains_invertible() ? " (invertible solution)" : "") << "\n";
            out << "  sign -1: dim " << res.minus.dim()
                << (res.minus.contains_invertible() ? " (invertible solution)" : "") << "\n";
            for (const auto* sp : {&res.plus, &res.minus}) {
                auto w = sp->invertible_element();
                if (w)
                    out << structure_as_document(*w, e.name,
                                                 std::string("found_") +
                                                     (sp->sign > 0 ? "plus" : "minus"));
            }
        }
        return 0;
    }

    if (req.command == "commutation-check") {
        if (req.morphism.empty()) throw Usage("a morphism name is required");
        const auto* f = doc.find_morphism(req.morphism);
        if (!f) throw Usage("unknown morphism '" + req.morphism + "'");
        const auto& bsrc = need_structure(doc, req.structure);
        const auto& btgt =
            req.target_structure.empty() ? bsrc : need_structure(doc, req.target_structure);
        CommutationReport rep = check_commutation(f->morphism, bsrc.structure, btgt.structure);
        if (records) {
            Json j;
            j["command"] = "commutation-check";
            j["morphism"] = f->name;
            j["structure"] = bsrc.name;
            j["target_structure"] = req.target_structure.empty() ? bsrc.name : btgt.name;
            j["expected_sign"] = rep.expected_sign;
            j["holds"] = rep.holds;
            j["detail"] = rep.detail;
            emit_record(out, j);
        } else {
            out << (rep.holds ? "commutation rule holds" : rep.detail) << " (sign "
                << (rep.expected_sign > 0 ? "+1" : "-1") << ")\n";
        }
        return rep.holds ? 0 : 1;
    }

    if (req.command == "ext") {
        const auto& a = need_mf(doc, req.source.empty() ? req.name : req.source);
        const auto& b = need_mf(doc, req.target.empty() ? a.name : req.target);
        ExtResult e = ext(a.mf, b.mf, req.max_degree, req.window);
        if (records) {
            Json j;
            j["command"] = "ext";
            j["source"] = a.name;
            j["target"] = b.name;
            j["dims"] = {e.dims[0], e.dims[1]};
            j["stabilized"] = e.stabilized;
            j["truncation_degree"] = e.truncation_degree;
            j["history"] = history_json(e);
            emit_record(out, j);
        } else {
            out << "Ext(" << a.name << ", " << b.name << "): Ext^0 dim " << e.dims[0]
                << ", Ext^1 dim " << e.dims[1] << (e.stabilized ? "" : " [NOT STABILIZED]")
                << " at degree " << e.truncation_degree << "\n";
        }
        return e.stabilized ? 0 : 3;
    }

    if (req.command == "ext-split") {
        const auto& a = need_mf(doc, req.name);
        const auto& b = need_structure(doc, req.structure);
        AdjointSplit s = ext_adjoint_split(a.mf, b.structure, req.max_degree, req.window);
        if (records) {
            Json j;
            j["command"] = "ext-split";
            j["name"] = a.name;
            j["structure"] = b.name;
            j["ext0"] = {s.ext0_plus, s.ext0_minus};
            j["ext1"] = {s.ext1_plus, s.ext1_minus};
            j["stabilized"] = s.ext.stabilized;
            j["truncation_degree"] = s.ext.truncation_degree;
            emit_record(out, j);
        } else {
            out << "Ext^0 split (+," << "-): (" << s.ext0_plus << ", " << s.ext0_minus
                << "); Ext^1 split: (" << s.ext1_plus << ", " << s.ext1_minus << ")\n";
        }
        return 0;
    }

    if (req.command == "knorrer" || req.command == "knorrer-squared") {
        const auto& e = need_mf(doc, req.name);
        const bool squared = req.command == "knorrer-squared";
        const std::size_t need = squared ? 4 : 2;
        if (req.new_vars.size() != need)
            throw Usage("this command needs exactly " + std::to_string(need) +
                        " fresh variable names");
        const InputDocument::StructureEntry* st =
            req.structure.empty() ? nullptr : &need_structure(doc, req.structure);

        KnorrerOutput ko;
        if (squared)
            ko = st ? theta_squared(e.mf, st->structure, req.new_vars[0], req.new_vars[1],
                                    req.new_vars[2], req.new_vars[3])
                    : theta_squared(e.mf, req.new_vars[0], req.new_vars[1], req.new_vars[2],
                                    req.new_vars[3]);
        else
            ko = st ? theta(e.mf, st->structure, req.new_vars[0], req.new_vars[1])
                    : theta(e.mf, req.new_vars[0], req.new_vars[1]);

        std::string out_name = e.name + (squared ? "_thth" : "_th");
        std::string document =
            ko.structure ? structure_as_document(*ko.structure, out_name, out_name + "_b")
                         : mf_as_document(ko.result, out_name);
        if (records) {
            Json j;
            j["command"] = req.command;
            j["name"] = e.name;
            j["rank"] = ko.result.rank();
            j["potential"] = ko.result.potential.to_string();
            if (ko.structure) {
                j["structure_kind"] = kind_name(ko.structure->kind);
                j["structure_sign"] = ko.structure->sign;
            }
            j["provenance"] = ko.provenance;
            j["document"] = document;
            emit_record(out, j);
        } else {
            out << "# " << ko.provenance << "\n" << document;
        }
        return 0;
    }

    if (req.command == "deform" || req.command == "deform-structured") {
        const auto& e = need_mf(doc, req.name);
        DeformationReport rep;
        std::string st_name;
        if (req.command == "deform-structured") {
            const auto& b = need_structure(doc, req.structure);
            st_name = b.name;
            rep = tangent_dims_structured(e.mf, b.structure, req.max_degree, req.window);
        } else {
            rep = tangent_dims(e.mf, req.max_degree, req.window);
        }
        if (records) {
            Json j;
            j["command"] = req.command;
            j["name"] = e.name;
            if (!st_name.empty()) j["structure"] = st_name;
            j["ext1_dim"] = rep.ext1_dim;
            j["ideal_dim"] = rep.ideal_dim;
            j["tangent_dim"] = rep.tangent_dim;
            j["fixed_potential_dim"] = rep.fixed_potential_dim;
            j["ext0_dim"] = rep.ext0_dim;
            j["obstruction_dim"] = rep.obstruction_dim;
            j["tjurina_dim"] = rep.tjurina_dim;
            j["stabilized"] = rep.stabilized;
            j["truncation_degree"] = rep.truncation_degree;
            if (rep.structured) {
                Json s;
                s["tangent_part_sign"] = rep.structured->sign_tangent;
                s["ext1_part"] = rep.structured->ext1_part;
                s["ext0_part"] = rep.structured->ext0_part;
                j["structured"] = s;
            }
            emit_record(out, j);
        } else {
            out << "deformation dims for \"" << e.name << "\"";
            if (!st_name.empty()) out << " with structure \"" << st_name << "\"";
            out << ":\n";
            out << "  Ext^1 " << (rep.structured ? "signed part " : "") << "dim: "
                << (rep.structured ? rep.structured->ext1_part : rep.ext1_dim) << "\n";
            out << "  Q-exact ideal dim: " << rep.ideal_dim << "\n";
            out << "  tangent dim: " << rep.tangent_dim << "\n";
            out << "  fixed-potential tangent dim: " << rep.fixed_potential_dim << "\n";
            out << "  obstruction cokernel dim: " << rep.obstruction_dim << "\n";
            out << "  Tjurina dim: " << rep.tjurina_dim << "\n";
        }
        return 0;
    }

    throw Usage("unknown command '" + req.command + "'");
}

}  // namespace

int run_cli(const CliRequest& req, std::ostream& out, std::ostream& err) {
    std::optional<BudgetScope> budget;
    std::uint64_t limit = 0;
    if (req.budget) {
        limit = *req.budget;
    } else if (const char* env = std::getenv("MFKIT_BUDGET")) {
        char* end = nullptr;
        limit = std::strtoull(env, &end, 10);
        if (end == env) limit = 0;
    }
    if (limit > 0) budget.emplace(limit);

    try {
        return run_dispatch(req, out);
    } catch (const Usage& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExhaustedError& e) {
        err << "budget: " << e.what() << "\n";
        return 3;
    } catch (const NonStabilizedError& e) {
        err << "non-stabilization: " << e.what() << "\n";
        return 3;
    } catch (const NonIsolatedError& e) {
        err << "precondition: " << e.what() << "\n";
        return 1;
    } catch (const InvalidArgumentError& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

namespace {

InputDocument build_node() {
    InputDocument doc;
    doc.vars = make_vars({"x", "y"});
    Polynomial w = parse_polynomial("x*y", doc.vars);
    doc.potentials.push_back({"w", w});
    MatrixFactorization m{PolyMatrix::scalar(1, Polynomial::variable(doc.vars, 0)),
                          PolyMatrix::scalar(1, Polynomial::variable(doc.vars, 1)), w};
    doc.mfs.push_back({"M", "w", m});
    BilinearStructure b;
    b.kind = StructureKind::Untwisted;
    b.sign = +1;
    b.host = m;
    b.b0 = PolyMatrix::scalar(1, Polynomial::constant(doc.vars, 1));
    b.b1 = PolyMatrix::scalar(1, Polynomial::constant(doc.vars, -1));
    doc.structures.push_back({"b", "M", b});
    return doc;
}

InputDocument build_node_rank2() {
    InputDocument doc;
    doc.vars = make_vars({"x", "y"});
    MatrixFactorization m = mf_xy(1, 1, doc.vars);
    doc.potentials.push_back({"w", m.potential});
    doc.mfs.push_back({"M", "w", m});
    BilinearStructure b;
    b.kind = StructureKind::Untwisted;
    b.sign = +1;
    b.host = m;
    b.b0 = PolyMatrix::identity(2, doc.vars);
    b.b1 = -PolyMatrix::identity(2, doc.vars);
    doc.structures.push_back({"b", "M", b});
    MorphismPair f = identity_morphism(m);
    doc.morphisms.push_back({"id", "M", "M", "even", f});
    return doc;
}

InputDocument build_cusp() {
    InputDocument doc;
    doc.vars = make_vars({"x"});
    Polynomial x = Polynomial::variable(doc.vars, 0);
    Polynomial w = x.pow(3);
    doc.potentials.push_back({"w", w});
    MatrixFactorization m{PolyMatrix::scalar(1, x), PolyMatrix::scalar(1, x.pow(2)), w};
    doc.mfs.push_back({"M", "w", m});
    BilinearStructure b;
    b.kind = StructureKind::Untwisted;
    b.sign = +1;
    b.host = m;
    b.b0 = PolyMatrix::scalar(1, Polynomial::constant(doc.vars, 1));
    b.b1 = PolyMatrix::scalar(1, Polynomial::constant(doc.vars, -1));
    doc.structures.push_back({"b", "M", b});
    return doc;
}

InputDocument build_brieskorn_d2() {
    InputDocument doc;
    MatrixFactorization m = mf_brieskorn({{1, 3}, {1, 3}});
    doc.vars = m.vars();
    doc.potentials.push_back({"w", m.potential});
    doc.mfs.push_back({"M", "w", m});
    // The twisted symplectic structure on the two-factor tensor.
    BilinearStructure q;
    q.kind = StructureKind::Twisted;
    q.sign = -1;
    q.host = m;
    QMat q0(2, 2), q1(2, 2);
    q0.at(0, 1) = 1;
    q0.at(1, 0) = -1;
    q1.at(0, 1) = -1;
    q1.at(1, 0) = 1;
    q.b0 = PolyMatrix::from_constant(q0, doc.vars);
    q.b1 = PolyMatrix::from_constant(q1, doc.vars);
    doc.structures.push_back({"q", "M", q});
    return doc;
}

}  // namespace

std::vector<std::string> example_names() {
    return {"node", "node_rank2", "cusp", "brieskorn_d2"};
}

std::string example_document(const std::string& name) {
    if (name == "node") return emit_document(build_node());
    if (name == "node_rank2") return emit_document(build_node_rank2());
    if (name == "cusp") return emit_document(build_cusp());
    if (name == "brieskorn_d2") return emit_document(build_brieskorn_d2());
    throw InvalidArgumentError("unknown example '" + name + "'");
}

}  // namespace mfk
