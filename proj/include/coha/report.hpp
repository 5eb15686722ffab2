#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coha {

// One machine-readable record: ordered key=value pairs. The text and machine
// renderings of every command are generated from the same records, so their
// numerical content cannot drift apart.
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
    void add(const std::string& key, long value) { fields.emplace_back(key, std::to_string(value)); }
    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }
};

// "k1=v1 k2=v2 ..." with values containing spaces quoted.
std::string render_machine(const std::vector<Record>& records);

// Aligned-column table over the union of keys, in first-appearance order.
std::string render_table(const std::vector<Record>& records);

}  // namespace coha
