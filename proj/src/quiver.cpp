#include "coha/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coha/errors.hpp"

namespace coha {

DimensionVector::DimensionVector(std::vector<int> v) : v_(std::move(v)) {
    for (int x : v_)
        if (x < 0) throw PreconditionError("dimension vector entries must be nonnegative");
}

DimensionVector DimensionVector::unit(int vertex_count, int vertex) {
    std::vector<int> v(static_cast<size_t>(vertex_count), 0);
    v.at(static_cast<size_t>(vertex)) = 1;
    return DimensionVector(std::move(v));
}

int DimensionVector::total() const {
    int t = 0;
    for (int x : v_) t += x;
    return t;
}

bool DimensionVector::is_zero() const { return total() == 0; }

bool DimensionVector::leq(const DimensionVector& o) const {
    if (size() != o.size()) throw PreconditionError("dimension vectors over different vertex sets");
    for (int i = 0; i < size(); ++i)
        if (v_[static_cast<size_t>(i)] > o[i]) return false;
    return true;
}

DimensionVector DimensionVector::operator+(const DimensionVector& o) const {
    if (size() != o.size()) throw PreconditionError("dimension vectors over different vertex sets");
    std::vector<int> r(v_);
    for (int i = 0; i < size(); ++i) r[static_cast<size_t>(i)] += o[i];
    return DimensionVector(std::move(r));
}

DimensionVector DimensionVector::operator-(const DimensionVector& o) const {
    if (!o.leq(*this)) throw PreconditionError("dimension vector subtraction out of range");
    std::vector<int> r(v_);
    for (int i = 0; i < size(); ++i) r[static_cast<size_t>(i)] -= o[i];
    return DimensionVector(std::move(r));
}

std::string DimensionVector::to_string() const {
    std::string s;
    for (int i = 0; i < size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v_[static_cast<size_t>(i)]);
    }
    return s;
}

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen_v(vertices_.begin(), vertices_.end());
    if (seen_v.size() != vertices_.size()) throw PreconditionError("duplicate vertex name");
    std::set<std::string> seen_a;
    for (const auto& a : arrows_) {
        if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
            throw PreconditionError("arrow endpoints must reference declared vertices");
        if (!seen_a.insert(a.name).second) throw PreconditionError("duplicate arrow name: " + a.name);
    }
}

int Quiver::vertex_index(const std::string& name) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[static_cast<size_t>(i)] == name) return i;
    return -1;
}

int Quiver::arrow_count(int i, int j) const {
    int c = 0;
    for (const auto& a : arrows_)
        if (a.source == i && a.target == j) ++c;
    return c;
}

bool Quiver::is_symmetric(int* bad_i, int* bad_j) const {
    for (int i = 0; i < vertex_count(); ++i)
        for (int j = i + 1; j < vertex_count(); ++j)
            if (arrow_count(i, j) != arrow_count(j, i)) {
                if (bad_i) *bad_i = i;
                if (bad_j) *bad_j = j;
                return false;
            }
    return true;
}

Quiver Quiver::with_arrows(std::vector<Arrow> arrows) const {
    Quiver r(vertices_, std::move(arrows));
    r.tripled_ = tripled_;
    return r;
}

Variable hbar() { return Variable::param("h"); }

Quiver build_double(const Quiver& q) {
    Quiver r = q;
    Polynomial h = Polynomial::var(hbar());
    for (const auto& a : q.arrows()) {
        Arrow rev;
        rev.name = a.name + "*";
        rev.source = a.target;
        rev.target = a.source;
        rev.kind = ArrowKind::Reverse;
        rev.param = h - a.param;
        r.arrows_.push_back(std::move(rev));
    }
    return r;
}

Quiver build_triple(const Quiver& q) {
    Quiver r = build_double(q);
    Polynomial h = Polynomial::var(hbar());
    for (int i = 0; i < q.vertex_count(); ++i) {
        Arrow loop;
        loop.name = "w_" + q.vertices()[static_cast<size_t>(i)];
        loop.source = i;
        loop.target = i;
        loop.kind = ArrowKind::Omega;
        loop.param = -h;
        r.arrows_.push_back(std::move(loop));
    }
    r.tripled_ = true;
    return r;
}

namespace {

bool is_param_var(const Variable& v) { return v.kind() == VarKind::Param; }

std::string matrix_fingerprint(const ZetaKernel& k) {
    std::ostringstream out;
    out << (k.mode() == KernelMode::Tripled ? "tripled" : "coha-zero-potential");
    out << "|" << (k.torus() == TorusMode::Trivial ? "trivial" : "generic");
    out << "|V=" << k.vertex_count();
    for (int i = 0; i < k.vertex_count(); ++i)
        for (int j = 0; j < k.vertex_count(); ++j)
            out << "|" << i << "," << j << ":" << k.delta(i, j) << ":" << k.numerator(i, j).to_string();
    return out.str();
}

}  // namespace

ZetaKernel::ZetaKernel(Quiver quiver, KernelMode mode, TorusMode torus,
                       std::vector<std::vector<Polynomial>> numer, std::vector<std::vector<int>> delta)
    : quiver_(std::move(quiver)), mode_(mode), torus_(torus), numer_(std::move(numer)),
      delta_(std::move(delta)) {
    int nv = quiver_.vertex_count();
    sharp_.assign(static_cast<size_t>(nv), std::vector<int>(static_cast<size_t>(nv), 0));
    Variable x = Variable::formal_x();
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
            const Polynomial& n = numer_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
            if (n.is_zero()) throw InternalError("zero kernel numerator");
            int deg = n.degree_of(x);
            if (deg == kNegInfDegree) deg = 0;
            int sharp = deg - delta_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
            sharp_[static_cast<size_t>(i)][static_cast<size_t>(j)] = sharp;
            if (sharp < -delta_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)))
                throw InternalError("kernel degree bound violated");
            // Leading coefficient in x must be (-1)^{#_ij}.
            Rational lead(0);
            for (const auto& [m, c] : n.terms())
                if (m.degree_of(x) == deg && m.total_degree() == deg) lead = c;
            Rational expect((sharp % 2 + 2) % 2 == 0 ? 1 : -1);
            if (lead != expect) throw InternalError("kernel leading coefficient is not (-1)^{#_ij}");
        }
    }
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            if (sharp_[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                sharp_[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw InternalError("kernel symmetry #_ij = #_ji violated");
    fingerprint_ = matrix_fingerprint(*this);
}

long ZetaKernel::euler_form(const DimensionVector& m, const DimensionVector& n) const {
    if (m.size() != vertex_count() || n.size() != vertex_count())
        throw PreconditionError("dimension vector does not match the kernel's vertex set");
    long s = 0;
    for (int i = 0; i < vertex_count(); ++i)
        for (int j = 0; j < vertex_count(); ++j)
            s += static_cast<long>(m[i]) * n[j] * sharp_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return -s;
}

std::vector<Variable> ZetaKernel::parameters() const {
    std::set<uint32_t> ids;
    std::vector<Variable> out;
    auto scan = [&](const Polynomial& p) {
        for (const auto& [m, c] : p.terms())
            for (const auto& f : m.factors())
                if (is_param_var(f.var) && ids.insert(f.var.param_id()).second) out.push_back(f.var);
    };
    for (const auto& row : numer_)
        for (const auto& p : row) scan(p);
    for (const auto& a : quiver_.arrows()) scan(a.param);
    std::sort(out.begin(), out.end(), [](const Variable& a, const Variable& b) {
        return a.param_name() < b.param_name();
    });
    return out;
}

ZetaKernel ZetaKernel::specialized(const std::map<Variable, Rational>& values) const {
    std::map<Variable, Polynomial> sigma;
    for (const auto& [v, r] : values) sigma.emplace(v, Polynomial(r));
    auto numer = numer_;
    for (auto& row : numer)
        for (auto& p : row) p = p.substitute(sigma);
    std::vector<Arrow> arrows = quiver_.arrows();
    for (auto& a : arrows) a.param = a.param.substitute(sigma);
    return ZetaKernel(quiver_.with_arrows(std::move(arrows)), mode_, torus_, std::move(numer), delta_);
}

ZetaKernel zeta_kernel(const Quiver& q, KernelMode mode, TorusMode torus) {
    int bi = -1, bj = -1;
    if (!q.is_symmetric(&bi, &bj))
        throw PreconditionError("quiver is not symmetric: arrow counts differ for vertex pair (" +
                                q.vertices()[static_cast<size_t>(bi)] + ", " +
                                q.vertices()[static_cast<size_t>(bj)] + ")");
    if (mode == KernelMode::Tripled && !q.is_tripled())
        throw PreconditionError("tripled kernel requires a build_triple output");

    int nv = q.vertex_count();
    Polynomial x = Polynomial::var(Variable::formal_x());
    Polynomial h = Polynomial::var(hbar());
    std::vector<std::vector<Polynomial>> numer(static_cast<size_t>(nv),
                                               std::vector<Polynomial>(static_cast<size_t>(nv), Polynomial(1L)));
    std::vector<std::vector<int>> delta(static_cast<size_t>(nv), std::vector<int>(static_cast<size_t>(nv), 0));
    for (int i = 0; i < nv; ++i) delta[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

    if (mode == KernelMode::ZeroPotential) {
        // zeta_ij(x) = prod_{a: i->j} (-x + u_a) / (-x)^{delta_ij}, stored as
        // N/x^{delta} with the sign of (-1)^{delta} folded into N.
        for (int i = 0; i < nv; ++i) {
            for (int j = 0; j < nv; ++j) {
                Polynomial n(1L);
                for (const auto& a : q.arrows()) {
                    if (a.source != i || a.target != j) continue;
                    Polynomial u = torus == TorusMode::Trivial ? Polynomial() : a.param;
                    n = n * (-x + u);
                }
                if (delta[static_cast<size_t>(i)][static_cast<size_t>(j)]) n = -n;
                numer[static_cast<size_t>(i)][static_cast<size_t>(j)] = n;
            }
        }
    } else {
        // zeta_ij(x) = ((x-h)/x)^{delta_ij} prod_{a: i->j}(-x-u_a)
        //              prod_{a: j->i}(-x-h+u_a), a over the original arrows.
        for (int i = 0; i < nv; ++i) {
            for (int j = 0; j < nv; ++j) {
                Polynomial n(1L);
                if (delta[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                    n = torus == TorusMode::Trivial ? x : (x - h);
                }
                for (const auto& a : q.arrows()) {
                    if (a.kind != ArrowKind::Original) continue;
                    if (a.source == i && a.target == j) {
                        Polynomial u = torus == TorusMode::Trivial ? Polynomial() : a.param;
                        n = n * (-x - u);
                    }
                    if (a.source == j && a.target == i) {
                        Polynomial u = torus == TorusMode::Trivial ? Polynomial() : a.param;
                        Polynomial hh = torus == TorusMode::Trivial ? Polynomial() : h;
                        n = n * (-x - hh + u);
                    }
                }
                numer[static_cast<size_t>(i)][static_cast<size_t>(j)] = n;
            }
        }
    }

    if (torus == TorusMode::Trivial) {
        // Trivial torus specializes every parameter to zero at construction.
        std::vector<Arrow> arrows = q.arrows();
        std::map<Variable, Polynomial> zero;
        for (auto& a : arrows)
            for (const auto& [m, c] : a.param.terms())
                for (const auto& f : m.factors())
                    if (f.var.kind() == VarKind::Param) zero.emplace(f.var, Polynomial());
        for (auto& a : arrows) a.param = a.param.substitute(zero);
        return ZetaKernel(q.with_arrows(std::move(arrows)), mode, torus, std::move(numer), std::move(delta));
    }
    return ZetaKernel(q, mode, torus, std::move(numer), std::move(delta));
}

}  // namespace coha
