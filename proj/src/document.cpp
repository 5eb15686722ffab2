#include "coha/document.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "coha/errors.hpp"

namespace coha {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Cursor(const std::string& t) : text(t) {}
    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_ident(Cursor& c) {
    c.skip_ws();
    if (!ident_start(c.peek())) c.fail("expected an identifier");
    std::string s;
    while (!c.done() && ident_char(c.peek())) s += c.get();
    return s;
}

// Statements separated by newlines or ';'.
std::vector<std::tuple<int, int, std::string>> split_statements(const std::string& text) {
    std::vector<std::tuple<int, int, std::string>> out;
    int line = 1, col = 1;
    int start_line = 1, start_col = 1;
    std::string cur;
    auto flush = [&] {
        size_t a = cur.find_first_not_of(" \t\r");
        if (a != std::string::npos) {
            size_t b = cur.find_last_not_of(" \t\r");
            out.emplace_back(start_line, start_col + static_cast<int>(a), cur.substr(a, b - a + 1));
        }
        cur.clear();
    };
    for (char ch : text) {
        if (ch == '\n' || ch == ';') {
            flush();
            if (ch == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            start_line = line;
            start_col = col;
            continue;
        }
        if (cur.empty()) {
            start_line = line;
            start_col = col;
        }
        cur += ch;
        ++col;
    }
    flush();
    return out;
}

const std::set<std::string>& reserved_names() {
    static const std::set<std::string> r{"x", "y", "z", "h"};
    return r;
}

}  // namespace

QuiverDocument parse_quiver_document(const std::string& text) {
    QuiverDocument doc;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    for (const auto& [line, col, stmt] : split_statements(text)) {
        Cursor c(stmt);
        c.line = line;
        c.col = col;
        std::string head = read_ident(c);
        c.skip_ws();
        if (head == "vertices") {
            if (c.peek() != ':') c.fail("expected ':' after 'vertices'");
            c.get();
            for (;;) {
                c.skip_ws();
                if (c.done()) break;
                if (c.peek() == ',') {
                    c.get();
                    continue;
                }
                std::string name = read_ident(c);
                if (reserved_names().count(name))
                    c.fail("vertex name '" + name + "' is reserved");
                if (std::find(vertices.begin(), vertices.end(), name) != vertices.end())
                    c.fail("duplicate vertex '" + name + "'");
                vertices.push_back(name);
            }
            if (vertices.empty()) c.fail("'vertices:' declares no vertices");
        } else if (head == "arrow") {
            std::string name = read_ident(c);
            c.skip_ws();
            if (c.peek() != ':') c.fail("expected ':' after the arrow name");
            c.get();
            std::string src = read_ident(c);
            c.skip_ws();
            if (c.peek() != '-') c.fail("expected '->' between arrow endpoints");
            c.get();
            if (c.peek() != '>') c.fail("expected '->' between arrow endpoints");
            c.get();
            std::string dst = read_ident(c);
            std::string param_name = "u_" + name;
            c.skip_ws();
            if (!c.done() && c.peek() == '@') {
                c.get();
                param_name = read_ident(c);
                if (reserved_names().count(param_name))
                    c.fail("parameter name '" + param_name + "' is reserved");
                c.skip_ws();
            }
            if (!c.done()) c.fail("unexpected trailing text in arrow statement");
            Arrow a;
            a.name = name;
            int si = -1, ti = -1;
            for (size_t i = 0; i < vertices.size(); ++i) {
                if (vertices[i] == src) si = static_cast<int>(i);
                if (vertices[i] == dst) ti = static_cast<int>(i);
            }
            if (si < 0) c.fail("unknown source vertex '" + src + "'");
            if (ti < 0) c.fail("unknown target vertex '" + dst + "'");
            a.source = si;
            a.target = ti;
            a.kind = ArrowKind::Original;
            a.param = Polynomial::var(Variable::param(param_name));
            for (const auto& other : arrows)
                if (other.name == name) c.fail("duplicate arrow name '" + name + "'");
            arrows.push_back(std::move(a));
        } else if (head == "build") {
            if (c.peek() != ':') c.fail("expected ':' after 'build'");
            c.get();
            c.skip_ws();
            std::string mode;
            while (!c.done() && (ident_char(c.peek()) || c.peek() == '-')) mode += c.get();
            if (mode == "as-is")
                doc.build = BuildDirective::AsIs;
            else if (mode == "double")
                doc.build = BuildDirective::Double;
            else if (mode == "triple")
                doc.build = BuildDirective::Triple;
            else
                c.fail("unknown build directive '" + mode + "'");
        } else if (head == "torus") {
            if (c.peek() != ':') c.fail("expected ':' after 'torus'");
            c.get();
            std::string mode = read_ident(c);
            if (mode == "trivial")
                doc.torus = TorusMode::Trivial;
            else if (mode == "generic")
                doc.torus = TorusMode::Generic;
            else
                c.fail("unknown torus mode '" + mode + "'");
        } else {
            c.fail("unknown document key '" + head + "'");
        }
    }
    if (vertices.empty()) throw ParseError("document declares no vertices", 1, 1);
    doc.base = Quiver(std::move(vertices), std::move(arrows));
    return doc;
}

std::string print_quiver_document(const QuiverDocument& doc) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& v : doc.base.vertices()) out << " " << v;
    out << "\n";
    for (const auto& a : doc.base.arrows()) {
        // Parameter label is a single named parameter for declared arrows.
        std::string pname;
        for (const auto& [m, c] : a.param.terms())
            for (const auto& f : m.factors())
                if (f.var.kind() == VarKind::Param) pname = f.var.param_name();
        out << "arrow " << a.name << ": " << doc.base.vertices()[static_cast<size_t>(a.source)]
            << " -> " << doc.base.vertices()[static_cast<size_t>(a.target)] << " @ " << pname << "\n";
    }
    out << "build: "
        << (doc.build == BuildDirective::AsIs ? "as-is"
                                              : doc.build == BuildDirective::Double ? "double" : "triple")
        << "\n";
    out << "torus: " << (doc.torus == TorusMode::Trivial ? "trivial" : "generic") << "\n";
    return out.str();
}

CohaContext build_context(const QuiverDocument& doc) {
    CohaContext ctx;
    ctx.doc = doc;
    switch (doc.build) {
        case BuildDirective::AsIs:
            ctx.built = doc.base;
            break;
        case BuildDirective::Double:
            ctx.built = build_double(doc.base);
            break;
        case BuildDirective::Triple:
            ctx.built = build_triple(doc.base);
            break;
    }
    KernelMode mode = doc.build == BuildDirective::Triple ? KernelMode::Tripled : KernelMode::ZeroPotential;
    ctx.kernel = std::make_shared<const ZetaKernel>(zeta_kernel(ctx.built, mode, doc.torus));
    return ctx;
}

CohaContext build_context_from_text(const std::string& text) {
    return build_context(parse_quiver_document(text));
}

namespace {

// Recursive-descent polynomial expression parser.
class ExprParser {
public:
    ExprParser(const std::string& text, const std::set<std::string>* allowed_params)
        : c_(text), allowed_params_(allowed_params) {}

    Polynomial parse() {
        Polynomial p = parse_expr();
        c_.skip_ws();
        if (!c_.done()) c_.fail("unexpected trailing text in expression");
        return p;
    }

private:
    Cursor c_;
    const std::set<std::string>* allowed_params_;

    Polynomial parse_expr() {
        c_.skip_ws();
        bool neg = false;
        if (c_.peek() == '-') {
            c_.get();
            neg = true;
        } else if (c_.peek() == '+') {
            c_.get();
        }
        Polynomial acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            c_.skip_ws();
            if (c_.peek() == '+') {
                c_.get();
                acc += parse_term();
            } else if (c_.peek() == '-') {
                c_.get();
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        for (;;) {
            c_.skip_ws();
            if (c_.peek() == '*') {
                c_.get();
                acc = acc * parse_factor();
            } else if (c_.peek() == '/') {
                c_.get();
                Polynomial d = parse_factor();
                if (!d.is_constant() || d.is_zero())
                    c_.fail("'/' requires a nonzero constant divisor");
                acc = acc.scaled(1 / d.constant_value());
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_factor() {
        Polynomial base = parse_base();
        c_.skip_ws();
        if (c_.peek() == '^') {
            c_.get();
            c_.skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(c_.peek())))
                c_.fail("'^' requires a nonnegative integer exponent");
            unsigned e = 0;
            while (std::isdigit(static_cast<unsigned char>(c_.peek())))
                e = e * 10 + static_cast<unsigned>(c_.get() - '0');
            return base.pow(e);
        }
        return base;
    }

    int parse_index() {
        c_.skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(c_.peek()))) c_.fail("expected an index");
        int v = 0;
        while (std::isdigit(static_cast<unsigned char>(c_.peek()))) v = v * 10 + (c_.get() - '0');
        return v;
    }

    Polynomial parse_base() {
        c_.skip_ws();
        char ch = c_.peek();
        if (ch == '(') {
            c_.get();
            Polynomial p = parse_expr();
            c_.skip_ws();
            if (c_.peek() != ')') c_.fail("expected ')'");
            c_.get();
            return p;
        }
        if (ch == '-') {
            c_.get();
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            long v = 0;
            while (std::isdigit(static_cast<unsigned char>(c_.peek()))) v = v * 10 + (c_.get() - '0');
            return Polynomial(v);
        }
        if (ident_start(ch)) {
            std::string name = read_ident(c_);
            if (name == "z") {
                c_.skip_ws();
                if (c_.peek() != '[') c_.fail("expected 'z[vertex,slot]'");
                c_.get();
                int vertex = parse_index();
                c_.skip_ws();
                if (c_.peek() != ',') c_.fail("expected ',' in 'z[vertex,slot]'");
                c_.get();
                int slot = parse_index();
                c_.skip_ws();
                if (c_.peek() != ']') c_.fail("expected ']'");
                c_.get();
                if (vertex < 1) c_.fail("z vertex index is 1-based");
                return Polynomial::var(Variable::z(vertex - 1, slot));
            }
            if (name == "y") {
                c_.skip_ws();
                if (c_.peek() != '[') c_.fail("expected 'y[index]'");
                c_.get();
                int idx = parse_index();
                c_.skip_ws();
                if (c_.peek() != ']') c_.fail("expected ']'");
                c_.get();
                return Polynomial::var(Variable::aux(idx));
            }
            if (name == "x") return Polynomial::var(Variable::formal_x());
            if (allowed_params_ && !allowed_params_->count(name))
                c_.fail("unknown parameter '" + name + "'");
            return Polynomial::var(Variable::param(name));
        }
        c_.fail("unexpected character in expression");
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
    ExprParser p(text, nullptr);
    return p.parse();
}

ShuffleElement parse_element(const CohaContext& ctx, const std::string& text) {
    std::string body = text;
    std::optional<DimensionVector> dim;

    // Optional '[n1,n2,...]' prefix.
    size_t at = body.find_first_not_of(" \t\r\n");
    if (at != std::string::npos && body[at] == '[') {
        size_t close = body.find(']', at);
        if (close == std::string::npos) throw ParseError("unterminated dimension prefix", 1, 1);
        std::string prefix = body.substr(at + 1, close - at - 1);
        std::vector<int> dims;
        std::stringstream ss(prefix);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                dims.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("bad dimension prefix entry '" + tok + "'", 1, 1);
            }
        }
        if (static_cast<int>(dims.size()) != ctx.built.vertex_count())
            throw ParseError("dimension prefix has " + std::to_string(dims.size()) +
                                 " entries for a quiver with " +
                                 std::to_string(ctx.built.vertex_count()) + " vertices",
                             1, 1);
        dim = DimensionVector(std::move(dims));
        body = body.substr(close + 1);
    }

    std::set<std::string> params{"h"};
    for (const auto& a : ctx.built.arrows())
        for (const auto& [m, c] : a.param.terms())
            for (const auto& f : m.factors())
                if (f.var.kind() == VarKind::Param) params.insert(f.var.param_name());

    ExprParser parser(body, &params);
    Polynomial p = parser.parse();

    if (p.contains_where([](const Variable& v) {
            return v.kind() == VarKind::Aux || v.kind() == VarKind::FormalX;
        }))
        throw PreconditionError("elements may not contain y[...] or x variables");

    if (!dim) {
        std::vector<int> inferred(static_cast<size_t>(ctx.built.vertex_count()), 0);
        bool any_z = false;
        for (const auto& [m, c] : p.terms())
            for (const auto& f : m.factors())
                if (f.var.kind() == VarKind::Z) {
                    any_z = true;
                    if (f.var.vertex() >= ctx.built.vertex_count())
                        throw PreconditionError("z vertex index exceeds the quiver's vertex count");
                    auto& slot = inferred[static_cast<size_t>(f.var.vertex())];
                    slot = std::max(slot, f.var.slot());
                }
        if (!any_z) {
            if (ctx.built.vertex_count() != 1)
                throw PreconditionError(
                    "constant element on a multi-vertex quiver needs an explicit [n,...] prefix");
            inferred[0] = 1;
        }
        dim = DimensionVector(std::move(inferred));
    }

    return ShuffleElement(ctx.kernel, *dim, std::move(p));
}

}  // namespace coha
