#pragma once

#include <string>
#include <vector>

#include "mfk/bilinear.hpp"
#include "mfk/mf.hpp"

namespace mfk {

// Parsed model of the input text format:
//
//   vars: x y
//   potential "w": x*y
//   mf "M" potential "w" { phi: [[x]] psi: [[y]] }
//   structure "b" on "M" { kind: untwisted; sign: +1; b0: [[1]]; b1: [[-1]] }
//   morphism "f" from "M" to "M" degree even { S: [[1]] T: [[1]] }
//
// '#' starts a comment. A bare `potential: <expr>` declares the document
// default, and `mf "M" { ... }` binds to it.
struct InputDocument {
    struct PotentialEntry {
        std::string name;  // empty for the default potential
        Polynomial poly;
    };
    struct MfEntry {
        std::string name;
        std::string potential_name;  // empty when bound to the default
        MatrixFactorization mf;
    };
    struct StructureEntry {
        std::string name;
        std::string host;
        BilinearStructure structure;
    };
    struct MorphismEntry {
        std::string name;
        std::string from, to;
        std::string degree;  // "even" | "odd"
        MorphismPair morphism;
    };

    VarListPtr vars;
    std::vector<PotentialEntry> potentials;
    std::vector<MfEntry> mfs;
    std::vector<StructureEntry> structures;
    std::vector<MorphismEntry> morphisms;

    const MfEntry* find_mf(const std::string& name) const;
    const StructureEntry* find_structure(const std::string& name) const;
    const MorphismEntry* find_morphism(const std::string& name) const;

    bool operator==(const InputDocument& o) const;
};

InputDocument parse_document(const std::string& text);
InputDocument parse_document_file(const std::string& path);

// Canonical emission; parse_document(emit_document(doc)) == doc.
std::string emit_document(const InputDocument& doc);

}  // namespace mfk
