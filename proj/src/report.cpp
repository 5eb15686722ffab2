#include "coha/report.hpp"

#include <algorithm>
#include <sstream>

namespace coha {

namespace {

std::string quote_if_needed(const std::string& v) {
    if (v.find(' ') == std::string::npos && v.find('"') == std::string::npos && !v.empty()) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string render_machine(const std::vector<Record>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        bool first = true;
        for (const auto& [k, v] : r.fields) {
            if (!first) out << " ";
            out << k << "=" << quote_if_needed(v);
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table(const std::vector<Record>& records) {
    std::vector<std::string> keys;
    for (const auto& r : records)
        for (const auto& [k, v] : r.fields)
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::vector<size_t> width(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) width[i] = keys[i].size();
    for (const auto& r : records)
        for (size_t i = 0; i < keys.size(); ++i)
            if (const std::string* v = r.find(keys[i])) width[i] = std::max(width[i], v->size());

    std::ostringstream out;
    for (size_t i = 0; i < keys.size(); ++i) {
        out << keys[i];
        if (i + 1 < keys.size()) out << std::string(width[i] - keys[i].size() + 2, ' ');
    }
    out << "\n";
    for (const auto& r : records) {
        for (size_t i = 0; i < keys.size(); ++i) {
            std::string v = r.find(keys[i]) ? *r.find(keys[i]) : "";
            out << v;
            if (i + 1 < keys.size()) out << std::string(width[i] - v.size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace coha
