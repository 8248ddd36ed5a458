#pragma once

// Dense univariate polynomials over a field scalar. Coefficient index equals
// degree; the zero polynomial has an empty coefficient vector.

#include <stdexcept>
#include <string>
#include <vector>

#include "curvlab/rational.hpp"

namespace curvlab {

template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : K(0);
    }
    K leading() const {
        if (is_zero()) throw std::domain_error("Poly: leading of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == K(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& s, Poly p) {
        for (auto& x : p.c_) x = s * x;
        p.trim();
        return p;
    }

    K eval(const K& x) const {
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = K(static_cast<long>(i)) * c_[i];
        return Poly(std::move(r));
    }

    // Euclidean division; K must be a field.
    static void divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        std::vector<K> r = a.c_;
        int db = b.degree();
        std::vector<K> q(a.degree() >= db ? a.degree() - db + 1 : 0, K(0));
        for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
            if (r[static_cast<std::size_t>(i)] == K(0)) continue;
            K f = r[static_cast<std::size_t>(i)] / b.c_.back();
            q[static_cast<std::size_t>(i - db)] = f;
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        quo = Poly(std::move(q));
        rem = Poly(std::move(r));
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return (K(1) / leading()) * *this;
    }

    // Substitute x^2 for x: p(x) -> p(x^2).
    Poly compose_x_squared() const {
        if (is_zero()) return Poly();
        std::vector<K> r(2 * c_.size() - 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
        return Poly(std::move(r));
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

using PolyQ = Poly<Rat>;
using PolyD = Poly<double>;

template <class K>
std::string Poly<K>::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        K a = coeff(k);
        if (a == K(0)) continue;
        std::string term;
        if constexpr (std::is_same_v<K, Rat>) {
            term = a.str();
        } else {
            term = std::to_string(a);
        }
        if (k > 0) {
            if (term == "1") term = "";
            else if (term == "-1") term = "-";
            term += var;
            if (k > 1) term += "^" + std::to_string(k);
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

}  // namespace curvlab
