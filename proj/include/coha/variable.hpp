#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "coha/errors.hpp"

namespace coha {

// The four kinds of variables, in canonical ascending order:
// the formal kernel variable x, then equivariant parameters (ordered by
// name), then z(vertex, slot) (by vertex declaration order, then slot),
// then auxiliary shift variables y(index).
enum class VarKind : uint8_t { FormalX = 0, Param = 1, Z = 2, Aux = 3 };

// A variable is a packed value type. Parameter names are interned in a
// process-wide registry; ordering of parameters is by name, not by id.
class Variable {
public:
    static Variable formal_x() { return Variable(pack(VarKind::FormalX, 0, 0)); }
    static Variable param(std::string_view name);
    static Variable z(int vertex, int slot) {
        if (vertex < 0 || vertex >= (1 << 14) || slot < 1 || slot >= (1 << 14))
            throw PreconditionError("z variable index out of range");
        return Variable(pack(VarKind::Z, static_cast<uint32_t>(vertex), static_cast<uint32_t>(slot)));
    }
    static Variable aux(int index) {
        if (index < 1 || index >= (1 << 14)) throw PreconditionError("aux variable index out of range");
        return Variable(pack(VarKind::Aux, 0, static_cast<uint32_t>(index)));
    }

    VarKind kind() const { return static_cast<VarKind>(code_ >> 28); }
    int vertex() const { return static_cast<int>((code_ >> 14) & 0x3fff); }
    int slot() const { return static_cast<int>(code_ & 0x3fff); }
    int aux_index() const { return static_cast<int>(code_ & 0x3fff); }
    uint32_t param_id() const { return code_ & 0x3fff; }
    const std::string& param_name() const;

    bool operator==(const Variable& o) const { return code_ == o.code_; }
    bool operator!=(const Variable& o) const { return code_ != o.code_; }

    // Canonical total order. Negative/zero/positive like strcmp.
    static int compare(const Variable& a, const Variable& b);
    bool operator<(const Variable& o) const { return compare(*this, o) < 0; }

    uint32_t code() const { return code_; }
    std::string to_string() const;

private:
    explicit Variable(uint32_t code) : code_(code) {}
    static uint32_t pack(VarKind k, uint32_t a, uint32_t b) {
        return (static_cast<uint32_t>(k) << 28) | (a << 14) | b;
    }
    uint32_t code_;
};

// Interned parameter-name registry (append-only, thread-safe).
uint32_t intern_param(std::string_view name);
const std::string& param_name_of(uint32_t id);

}  // namespace coha
