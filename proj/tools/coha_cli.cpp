#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "coha/document.hpp"
#include "coha/errors.hpp"
#include "coha/filtration.hpp"
#include "coha/kac.hpp"
#include "coha/parallel.hpp"
#include "coha/report.hpp"
#include "coha/wheel.hpp"

namespace {

using namespace coha;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;

struct Options {
    std::string quiver_file;
    bool machine = false;
    unsigned long long seed = 0;
    int jobs = 1;
};

DimensionVector parse_dim(const std::string& text, int vertex_count) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            dims.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("bad dimension entry '" + tok + "'", 1, 1);
        }
    }
    if (static_cast<int>(dims.size()) != vertex_count)
        throw ParseError("dimension vector has " + std::to_string(dims.size()) +
                             " entries for a quiver with " + std::to_string(vertex_count) + " vertices",
                         1, 1);
    return DimensionVector(std::move(dims));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("bad integer list entry '" + tok + "'", 1, 1);
        }
    }
    return out;
}

CohaContext load_context(const Options& opt) {
    if (opt.quiver_file.empty()) throw PreconditionError("--quiver FILE is required");
    std::ifstream in(opt.quiver_file);
    if (!in) throw PreconditionError("cannot open quiver file: " + opt.quiver_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return build_context_from_text(buf.str());
}

void emit(const Options& opt, const std::vector<Record>& records, const std::string& text) {
    if (opt.machine)
        std::cout << render_machine(records);
    else
        std::cout << text;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ---- subcommand bodies ----

int run_product(const Options& opt, const std::string& lhs, const std::string& rhs, bool bracket) {
    CohaContext ctx = load_context(opt);
    ShuffleElement a = parse_element(ctx, lhs);
    ShuffleElement b = parse_element(ctx, rhs);
    ShuffleElement r = bracket ? super_bracket(a, b) : shuffle_product(a, b);
    Record rec;
    rec.add("cmd", std::string(bracket ? "bracket" : "product"));
    rec.add("dim", r.dim().to_string());
    rec.add("deg", r.is_zero() ? std::string("-inf") : std::to_string(r.degree()));
    rec.add("poly", r.poly().to_string());
    std::ostringstream text;
    text << "dim: (" << r.dim().to_string() << ")\n" << r.poly().to_string() << "\n";
    emit(opt, {rec}, text.str());
    return kExitOk;
}

int run_member(const Options& opt, int d, const std::string& expr, bool recursive) {
    CohaContext ctx = load_context(opt);
    ShuffleElement e = parse_element(ctx, expr);
    bool result;
    if (recursive) {
        FiltrationContext fc(ctx.kernel);
        result = fc.member_recursive(e, d);
    } else {
        result = member_direct(e, d);
    }
    Record rec;
    rec.add("cmd", std::string("member"));
    rec.add("d", static_cast<long>(d));
    rec.add("dim", e.dim().to_string());
    rec.add("result", bool_str(result));
    emit(opt, {rec}, bool_str(result) + "\n");
    return kExitOk;
}

int run_basis(const Options& opt, int d, const std::string& dim, int deg_max) {
    CohaContext ctx = load_context(opt);
    DimensionVector n = parse_dim(dim, ctx.built.vertex_count());
    FiltrationContext fc(ctx.kernel);
    std::vector<Record> records;
    std::ostringstream text;
    for (int delta = 0; delta <= deg_max; ++delta) {
        auto sub = fc.subspace(n, d, delta);
        Record rec;
        rec.add("n", n.to_string());
        rec.add("delta", static_cast<long>(delta));
        rec.add("d", static_cast<long>(d));
        rec.add("dim", static_cast<long>(sub->dim()));
        records.push_back(rec);
        text << "n=(" << n.to_string() << ") delta=" << delta << " d=" << d << " dim=" << sub->dim()
             << "\n";
        for (int i = 0; i < sub->dim(); ++i) {
            Record er;
            er.add("n", n.to_string());
            er.add("delta", static_cast<long>(delta));
            er.add("d", static_cast<long>(d));
            er.add("index", static_cast<long>(i));
            er.add("poly", sub->elements[static_cast<size_t>(i)].poly().to_string());
            records.push_back(er);
            text << "  [" << i << "] " << sub->elements[static_cast<size_t>(i)].poly().to_string()
                 << "\n";
        }
    }
    emit(opt, records, text.str());
    return kExitOk;
}

int run_pbw(const Options& opt, const std::string& dim_max, int deg_max, int d_max) {
    CohaContext ctx = load_context(opt);
    DimensionVector n_max = parse_dim(dim_max, ctx.built.vertex_count());
    FiltrationContext fc(ctx.kernel);
    SignTwist twist = SignTwist::canonical(ctx.kernel);
    PBWReport report = pbw_check(fc, twist, n_max, deg_max, d_max);
    std::vector<Record> records;
    for (const auto& cell : report.cells) {
        Record rec;
        rec.add("n", cell.n.to_string());
        rec.add("delta", static_cast<long>(cell.delta));
        rec.add("d", static_cast<long>(cell.d));
        rec.add("dim", static_cast<long>(cell.dim));
        rec.add("monomials", static_cast<long>(cell.count));
        rec.add("rank", static_cast<long>(cell.rank));
        rec.add("verdict", std::string(cell.pass ? "pass" : "fail"));
        records.push_back(std::move(rec));
    }
    std::ostringstream text;
    text << render_table(records);
    text << (report.all_pass ? "pbw: all cells pass" : "pbw: FAILING CELLS PRESENT") << "\n";
    emit(opt, records, text.str());
    return report.all_pass ? kExitOk : kExitPrecondition;
}

int run_wheel_check(const Options& opt, const std::string& expr) {
    CohaContext ctx = load_context(opt);
    ShuffleElement e = parse_element(ctx, expr);
    bool result = wheel_member(e);
    Record rec;
    rec.add("cmd", std::string("wheel-check"));
    rec.add("dim", e.dim().to_string());
    rec.add("result", bool_str(result));
    emit(opt, {rec}, bool_str(result) + "\n");
    return kExitOk;
}

int run_spherical(const Options& opt, const std::string& degrees, const std::string& word_text,
                  unsigned long long seed) {
    CohaContext ctx = load_context(opt);
    std::mt19937_64 rng(seed);
    // ';' separates words, ',' separates letters.
    std::vector<SphericalWord> words;
    std::stringstream ss(degrees);
    std::string chunk;
    std::vector<std::string> word_chunks;
    if (!word_text.empty()) {
        std::stringstream ws(word_text);
        std::string w;
        while (std::getline(ws, w, ';')) word_chunks.push_back(w);
    }
    size_t at = 0;
    while (std::getline(ss, chunk, ';')) {
        std::vector<int> degs = parse_int_list(chunk);
        SphericalWord word;
        if (at < word_chunks.size()) {
            std::stringstream ws(word_chunks[at]);
            std::string vtx;
            std::vector<int> vertices;
            while (std::getline(ws, vtx, ',')) {
                int vi = ctx.built.vertex_index(vtx);
                if (vi < 0) throw PreconditionError("unknown vertex '" + vtx + "' in --word");
                vertices.push_back(vi);
            }
            if (vertices.size() != degs.size())
                throw PreconditionError("--word and --degrees lengths differ");
            for (size_t i = 0; i < degs.size(); ++i) word.letters.emplace_back(vertices[i], degs[i]);
        } else {
            for (int dg : degs) word.letters.emplace_back(0, dg);
        }
        words.push_back(std::move(word));
        ++at;
    }
    auto spans = spherical_span(ctx.kernel, words, rng);
    std::vector<Record> records;
    std::ostringstream text;
    for (const auto& sub : spans) {
        Record rec;
        rec.add("n", sub.n.to_string());
        rec.add("delta", static_cast<long>(sub.delta));
        rec.add("rank", static_cast<long>(sub.dim()));
        records.push_back(rec);
        text << "n=(" << sub.n.to_string() << ") delta=" << sub.delta << " rank=" << sub.dim() << "\n";
        for (int i = 0; i < sub.dim(); ++i) {
            Record er;
            er.add("n", sub.n.to_string());
            er.add("delta", static_cast<long>(sub.delta));
            er.add("index", static_cast<long>(i));
            er.add("poly", sub.elements[static_cast<size_t>(i)].poly().to_string());
            records.push_back(er);
            text << "  [" << i << "] " << sub.elements[static_cast<size_t>(i)].poly().to_string()
                 << "\n";
        }
    }
    emit(opt, records, text.str());
    return kExitOk;
}

int run_conjecture(const Options& opt, const std::string& dim_max, int deg_max,
                   unsigned long long seed) {
    CohaContext ctx = load_context(opt);
    std::mt19937_64 rng(seed);
    DimensionVector n_max = parse_dim(dim_max, ctx.built.vertex_count());
    FiltrationContext fc(ctx.kernel);
    ConjectureReport report = conjecture_report(ctx.doc.base, fc, n_max, deg_max, rng);
    std::vector<Record> records;
    std::ostringstream text;
    for (const auto& row : report.rows) {
        for (const auto& s : row.slices) {
            Record rec;
            rec.add("n", row.n.to_string());
            rec.add("delta", static_cast<long>(s.delta));
            rec.add("rank", static_cast<long>(s.rank));
            records.push_back(rec);
        }
        Record rec;
        rec.add("n", row.n.to_string());
        rec.add("total", static_cast<long>(row.total_rank));
        if (row.kac_available) rec.add("kac1", row.kac_value);
        rec.add("verdict", row.verdict);
        records.push_back(rec);
        text << "n=(" << row.n.to_string() << ") total=" << row.total_rank;
        if (row.kac_available) text << " kac1=" << row.kac_value;
        text << " verdict=" << row.verdict << "\n";
        for (const auto& s : row.slices) text << "  delta=" << s.delta << " rank=" << s.rank << "\n";
    }
    emit(opt, records, text.str());
    return kExitOk;
}

int run_kac(const Options& opt, const std::string& dim, const std::string& q_list) {
    CohaContext ctx = load_context(opt);
    DimensionVector n = parse_dim(dim, ctx.built.vertex_count());
    std::vector<int> qs = parse_int_list(q_list);
    std::vector<Record> records;
    std::ostringstream text;
    std::vector<std::pair<long, long>> points;
    for (int q : qs) {
        KacCount c = abs_indec_count(ctx.built, n, q);
        points.emplace_back(q, c.absolutely_indecomposable);
        Record rec;
        rec.add("n", n.to_string());
        rec.add("q", static_cast<long>(q));
        rec.add("classes", c.classes);
        rec.add("indec", c.indecomposable);
        rec.add("absindec", c.absolutely_indecomposable);
        records.push_back(rec);
        text << "n=(" << n.to_string() << ") q=" << q << " classes=" << c.classes
             << " indec=" << c.indecomposable << " absindec=" << c.absolutely_indecomposable << "\n";
    }
    if (points.size() >= 2) {
        auto coeffs = interpolate_polynomial(points);
        std::string poly;
        for (size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == 0 && coeffs.size() > 1) continue;
            if (!poly.empty()) poly += " + ";
            poly += coeffs[k].get_str();
            if (k == 1)
                poly += "*q";
            else if (k > 1)
                poly += "*q^" + std::to_string(k);
        }
        if (poly.empty()) poly = "0";
        Record rec;
        rec.add("n", n.to_string());
        rec.add("kacpoly", poly);
        records.push_back(rec);
        text << "A(q) = " << poly << "\n";
    }
    emit(opt, records, text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shuffle-algebra calculator for quiver CoHAs: products, perverse-filtration "
                 "membership and bases, BPS extraction, PBW verification, wheel conditions, and "
                 "finite-field Kac counts"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    app.add_option("--quiver", opt.quiver_file, "Quiver document file");
    app.add_flag("--machine", opt.machine, "Machine-readable key=value output");
    app.add_option("--seed", opt.seed, "Seed for randomized specializations");
    app.add_option("--jobs", opt.jobs, "Worker pool width");

    std::string lhs, rhs, expr, dim, dim_max, degrees, word;
    std::string q_list = "2,3";
    int d = 1, deg_max = 4, d_max = 7;
    bool recursive = false;

    auto* product = app.add_subcommand("product", "Shuffle product of two elements");
    product->add_option("lhs", lhs)->required();
    product->add_option("rhs", rhs)->required();

    auto* bracket = app.add_subcommand("bracket", "Super Lie bracket [E,F]");
    bracket->add_option("lhs", lhs)->required();
    bracket->add_option("rhs", rhs)->required();

    auto* member = app.add_subcommand("member", "Filtration membership E in F^d");
    member->add_option("--d", d, "Filtration index")->required();
    member->add_flag("--recursive", recursive, "Use the recursive oracle");
    member->add_option("expr", expr)->required();

    auto* basis = app.add_subcommand("basis", "Echelon bases of F^d degree slices");
    basis->add_option("--d", d)->required();
    basis->add_option("--dim", dim)->required();
    basis->add_option("--deg-max", deg_max);

    auto* bps = app.add_subcommand("bps", "BPS (d=1) slice dimensions and bases");
    bps->add_option("--dim", dim)->required();
    bps->add_option("--deg-max", deg_max);

    auto* pbw = app.add_subcommand("pbw-check", "PBW / integrality verification");
    pbw->add_option("--dim-max", dim_max)->required();
    pbw->add_option("--deg-max", deg_max);
    pbw->add_option("--d-max", d_max);

    auto* wheel = app.add_subcommand("wheel-check", "Wheel-condition membership");
    wheel->add_option("expr", expr)->required();

    auto* spherical = app.add_subcommand("spherical", "Spherical products and their spans");
    spherical->add_option("--degrees", degrees, "Comma list; ';' separates words")->required();
    spherical->add_option("--word", word, "Vertex names per letter (defaults to the first vertex)");

    auto* conjecture = app.add_subcommand("conjecture", "F^1 cap S ranks vs Kac prediction");
    conjecture->add_option("--dim-max", dim_max)->required();
    conjecture->add_option("--deg-max", deg_max);

    auto* kac = app.add_subcommand("kac", "Finite-field counts and Kac values");
    kac->add_option("--dim", dim)->required();
    kac->add_option("--q", q_list, "Comma list of prime powers in {2,3,4,5}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    coha::parallel::set_jobs(opt.jobs);

    try {
        if (product->parsed()) return run_product(opt, lhs, rhs, false);
        if (bracket->parsed()) return run_product(opt, lhs, rhs, true);
        if (member->parsed()) return run_member(opt, d, expr, recursive);
        if (basis->parsed()) return run_basis(opt, d, dim, deg_max);
        if (bps->parsed()) return run_basis(opt, 1, dim, deg_max);
        if (pbw->parsed()) return run_pbw(opt, dim_max, deg_max, d_max);
        if (wheel->parsed()) return run_wheel_check(opt, expr);
        if (spherical->parsed()) return run_spherical(opt, degrees, word, opt.seed);
        if (conjecture->parsed()) return run_conjecture(opt, dim_max, deg_max, opt.seed);
        if (kac->parsed()) return run_kac(opt, dim, q_list);
        std::cerr << "no subcommand\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonExactDivision& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
}
