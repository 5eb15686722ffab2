#include "coha/variable.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace coha {

namespace {

struct ParamRegistry {
    std::shared_mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, uint32_t> ids;
};

ParamRegistry& registry() {
    static ParamRegistry r;
    return r;
}

}  // namespace

uint32_t intern_param(std::string_view name) {
    auto& r = registry();
    std::string key(name);
    {
        std::shared_lock lock(r.mu);
        auto it = r.ids.find(key);
        if (it != r.ids.end()) return it->second;
    }
    std::unique_lock lock(r.mu);
    auto it = r.ids.find(key);
    if (it != r.ids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(r.names.size());
    if (id >= (1 << 14)) throw PreconditionError("too many distinct parameter names");
    r.names.push_back(key);
    r.ids.emplace(std::move(key), id);
    return id;
}

const std::string& param_name_of(uint32_t id) {
    auto& r = registry();
    std::shared_lock lock(r.mu);
    return r.names.at(id);
}

Variable Variable::param(std::string_view name) {
    if (name.empty()) throw PreconditionError("empty parameter name");
    return Variable(pack(VarKind::Param, 0, intern_param(name)));
}

const std::string& Variable::param_name() const { return param_name_of(param_id()); }

int Variable::compare(const Variable& a, const Variable& b) {
    if (a.code_ == b.code_) return 0;
    VarKind ka = a.kind(), kb = b.kind();
    if (ka != kb) return ka < kb ? -1 : 1;
    if (ka == VarKind::Param) {
        // Parameters are ordered by name, not by interning order.
        int c = a.param_name().compare(b.param_name());
        if (c != 0) return c < 0 ? -1 : 1;
        return 0;
    }
    return a.code_ < b.code_ ? -1 : 1;
}

std::string Variable::to_string() const {
    switch (kind()) {
        case VarKind::FormalX:
            return "x";
        case VarKind::Param:
            return param_name();
        case VarKind::Z:
            return "z[" + std::to_string(vertex() + 1) + "," + std::to_string(slot()) + "]";
        case VarKind::Aux:
            return "y[" + std::to_string(aux_index()) + "]";
    }
    return "?";
}

}  // namespace coha
