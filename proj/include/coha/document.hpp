#pragma once

#include <optional>
#include <string>

#include "coha/shuffle.hpp"

namespace coha {

enum class BuildDirective { AsIs, Double, Triple };

// A parsed quiver document: declared vertices/arrows plus the build and
// torus directives.
struct QuiverDocument {
    Quiver base;  // as declared, before the build directive
    BuildDirective build = BuildDirective::AsIs;
    TorusMode torus = TorusMode::Trivial;
};

// Line-based document with ';' or newline separated statements:
//   vertices: v w
//   arrow a: v -> w @ u
//   build: triple        (as-is | double | triple)
//   torus: generic       (trivial | generic)
// The '@ name' parameter label is optional and defaults to u_<arrow-name>.
QuiverDocument parse_quiver_document(const std::string& text);

// Canonical rendering; parse(print(doc)) is the identity.
std::string print_quiver_document(const QuiverDocument& doc);

// The document's quiver after the build directive, and its kernel.
struct CohaContext {
    QuiverDocument doc;
    Quiver built;
    KernelPtr kernel;
};

CohaContext build_context(const QuiverDocument& doc);
CohaContext build_context_from_text(const std::string& text);

// Element expression: optional '[n1,n2,...]' dimension-vector prefix, then a
// polynomial expression in z[i,a], declared parameter names, integer or
// integer/integer literals, + - * ^ and parentheses. Without the prefix the
// dimension vector is inferred as the per-vertex maximum slot; expressions
// with no z variables infer the unit vector on a single-vertex quiver and
// are rejected otherwise. Non-color-symmetric input is rejected, never
// symmetrized.
ShuffleElement parse_element(const CohaContext& ctx, const std::string& text);

// Polynomial-only parser used for round-trip checks: accepts the canonical
// rendering (including parameters and y[k] aux variables).
Polynomial parse_polynomial(const std::string& text);

}  // namespace coha
