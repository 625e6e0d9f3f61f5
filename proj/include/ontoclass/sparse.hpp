#pragma once

#include <map>
#include <string>

namespace ontoclass {

// Sparse feature vector: feature id -> non-negative value. Absent keys read
// as zero; code that writes entries must never store a zero (use set_or_erase
// when a computed value may vanish). Ordered map so every iteration order is
// deterministic.
using SparseVector = std::map<std::string, double>;

inline double value_of(const SparseVector& v, const std::string& key) {
    auto it = v.find(key);
    return it == v.end() ? 0.0 : it->second;
}

inline void set_or_erase(SparseVector& v, const std::string& key, double value) {
    if (value == 0.0)
        v.erase(key);
    else
        v[key] = value;
}

inline double sum(const SparseVector& v) {
    double s = 0.0;
    for (const auto& [k, x] : v) s += x;
    return s;
}

}  // namespace ontoclass
