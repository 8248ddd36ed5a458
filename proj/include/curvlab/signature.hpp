#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

// Signature (p,q): p timelike directions (inner product -1), q spacelike (+1),
// canonical basis ordered timelike first.
struct Signature {
    int p = 0;
    int q = 0;

    Signature() = default;
    Signature(int p_, int q_) : p(p_), q(q_) {
        if (p < 0 || q < 0 || p + q < 1)
            throw std::invalid_argument("Signature: need p,q >= 0 and p+q >= 1");
    }

    int dim() const { return p + q; }
    int eps(int i) const { return i < p ? -1 : 1; }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

}  // namespace curvlab
