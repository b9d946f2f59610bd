#pragma once

#include <stdexcept>
#include <string>

namespace fanokit {

// Three-valued logic for the user-supplied geometric flags.
enum class Tri { Yes, No, Unknown };

inline const char* tri_name(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Unknown: return "unknown";
    }
    throw std::logic_error("unknown tri tag");
}

inline Tri tri_from_name(const std::string& s) {
    if (s == "yes") return Tri::Yes;
    if (s == "no") return Tri::No;
    if (s == "unknown") return Tri::Unknown;
    throw std::invalid_argument("expected yes/no/unknown, got: " + s);
}

}  // namespace fanokit
