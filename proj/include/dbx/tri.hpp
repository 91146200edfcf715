#pragma once

#include <cstddef>
#include <string>

namespace dbx {

// Three-valued verdict for predicates evaluated on finite prefixes: a
// lexicographic violation at finite depth is final, absence of one is not.
struct Tri {
    enum Value { No = 0, Yes = 1, Unknown = 2 };

    Value value = Unknown;
    std::size_t depth = 0;  // inspection depth when value == Unknown

    static Tri yes() { return {Yes, 0}; }
    static Tri no() { return {No, 0}; }
    static Tri unknown(std::size_t depth) { return {Unknown, depth}; }

    bool is_yes() const { return value == Yes; }
    bool is_no() const { return value == No; }
    bool is_unknown() const { return value == Unknown; }

    std::string str() const {
        switch (value) {
            case Yes: return "yes";
            case No: return "no";
            default: return "unknown(" + std::to_string(depth) + ")";
        }
    }
};

} // namespace dbx
