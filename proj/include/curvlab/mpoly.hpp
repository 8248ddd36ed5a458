#pragma once

// Sparse multivariate polynomials over the rationals, plus the small rational
// function field the warped-product charts need. Exponent keys are trimmed of
// trailing zeros so the variable count is implicit.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/rational.hpp"

namespace curvlab {

class MPoly {
public:
    using Key = std::vector<int>;

    MPoly() = default;
    static MPoly constant(const Rat& c);
    static MPoly var(int index, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // valid when is_constant()

    const std::map<Key, Rat>& terms() const { return terms_; }

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Rat& s, const MPoly& p);
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(int e) const;
    MPoly derivative(int var) const;
    Rat eval(const std::vector<Rat>& point) const;
    int max_var() const;  // largest variable index used, -1 if constant

    std::string str(const std::function<std::string(int)>& name) const;

    void add_term(Key k, const Rat& c);  // accumulate, canonicalizing

private:
    std::map<Key, Rat> terms_;
};

// Rational function num/den with light normalization (exact field operations,
// no multivariate gcd; zero tests reduce to the numerator).
class RatFn {
public:
    RatFn() : num_(), den_(MPoly::constant(Rat(1))) {}
    RatFn(MPoly n, MPoly d);
    explicit RatFn(const MPoly& n) : num_(n), den_(MPoly::constant(Rat(1))) {}
    static RatFn constant(const Rat& c) { return RatFn(MPoly::constant(c)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);

    RatFn derivative(int var) const;
    Rat eval(const std::vector<Rat>& point) const;  // throws on zero denominator

private:
    bool den_is_one() const;
    MPoly num_, den_;
};

// Exact division: a / b when the remainder is zero, nullopt otherwise.
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);

// Parses the CLI polynomial DSL: +, -, *, / (constant divisor), ^ (integer
// power), parentheses, integer/decimal/rational literals, and identifiers
// resolved through `lookup` (returns the variable index or -1).
MPoly parse_mpoly(const std::string& text,
                  const std::function<int(const std::string&)>& lookup);

}  // namespace curvlab
