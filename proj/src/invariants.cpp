#include "curvlab/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

MatD ScaledOp::to_float() const {
    double s = std::sqrt(rho.to_double());
    MatD r(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = s * M(i, j).to_double();
    return r;
}

bool scaled_ops_equal(const ScaledOp& a, const ScaledOp& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const Rat &x = a.M(i, j), &y = b.M(i, j);
            if (x.sign() != y.sign()) return false;
            if (x * x * a.rho != y * y * b.rho) return false;
        }
    return true;
}

SpectrumKey spectrum_key(const ScaledOp& op) {
    SpectrumKey key;
    key.dim = op.dim();
    PolyQ p = pseudolin::char_poly(op.M);
    key.enc.reserve(static_cast<std::size_t>(key.dim) + 1);
    for (int k = 0; k <= key.dim; ++k) {
        Rat a = p.coeff(k);
        key.enc.emplace_back(a.sign(), a * a * op.rho.pow(key.dim - k));
    }
    return key;
}

bool SpectrumKey::all_zero_spectrum() const {
    for (int k = 0; k < dim; ++k)
        if (enc[static_cast<std::size_t>(k)].first != 0) return false;
    return true;
}

std::string SpectrumKey::str() const {
    std::string s = "charpoly-enc[";
    for (int k = dim; k >= 0; --k) {
        const auto& [sg, sq] = enc[static_cast<std::size_t>(k)];
        if (k < dim) s += ",";
        if (sg == 0) {
            s += "0";
        } else {
            if (auto r = sq.sqrt_exact())
                s += (sg < 0 ? "-" : "") + r->str();
            else
                s += (sg < 0 ? "-sqrt(" : "sqrt(") + sq.str() + ")";
        }
    }
    return s + "]";
}

bool ScaledClassKey::operator<(const ScaledClassKey& o) const {
    if (tag != o.tag) return static_cast<int>(tag) < static_cast<int>(o.tag);
    if (sign != o.sign) return sign < o.sign;
    if (square != o.square) return square < o.square;
    if (prod != o.prod) return prod < o.prod;
    return partition < o.partition;
}

namespace {

std::string sqrt_form(int sign, const Rat& square) {
    if (sign == 0) return "0";
    if (auto r = square.sqrt_exact()) return (sign < 0 ? "-" : "") + r->str();
    return (sign < 0 ? "-sqrt(" : "sqrt(") + square.str() + ")";
}

std::string partition_str(const std::vector<int>& part) {
    std::string s = "[";
    for (std::size_t i = 0; i < part.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(part[i]);
    }
    return s + "]";
}

}  // namespace

std::string ScaledClassKey::str() const {
    switch (tag) {
        case Tag::Real:
            return "(" + sqrt_form(sign, square) + ", " + partition_str(partition) + ")";
        case Tag::RealPair:
            return "(real-pair sum=" + sqrt_form(sign, square) + " prod=" + prod.str() + ", " +
                   partition_str(partition) + ")";
        case Tag::ComplexPair:
            return "(conj-pair sum=" + sqrt_form(sign, square) + " prod=" + prod.str() + ", " +
                   partition_str(partition) + ")";
    }
    return "";
}

std::string JordanKey::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i) s += ", ";
        s += classes[i].str();
    }
    return s + "}";
}

bool JordanKey::jordan_simple() const {
    for (const auto& c : classes)
        for (int b : c.partition)
            if (b > 1) return false;
    return true;
}

std::optional<JordanKey> jordan_key(const ScaledOp& op) {
    pseudolin::JordanSignature js = pseudolin::jordan_signature(op.M);
    if (!js.exact) return std::nullopt;
    JordanKey key;
    key.dim = op.dim();
    for (const auto& c : js.classes) {
        if (c.kind == pseudolin::JordanClass::Kind::Rational) {
            ScaledClassKey k;
            k.tag = ScaledClassKey::Tag::Real;
            k.sign = c.value.sign();
            k.square = c.value * c.value * op.rho;
            k.partition = c.partition;
            key.classes.push_back(k);
            continue;
        }
        Rat disc = c.qb * c.qb - Rat(4) * c.qc;
        if (c.qb.is_zero() && disc.sign() > 0) {
            // Roots +/- sqrt(-qc); split so the encoding matches samples where
            // the same scaled values appear as rational roots.
            for (int s : {+1, -1}) {
                ScaledClassKey k;
                k.tag = ScaledClassKey::Tag::Real;
                k.sign = s;
                k.square = -c.qc * op.rho;
                k.partition = c.partition;
                key.classes.push_back(k);
            }
            continue;
        }
        ScaledClassKey k;
        k.tag = disc.sign() > 0 ? ScaledClassKey::Tag::RealPair : ScaledClassKey::Tag::ComplexPair;
        k.sign = (-c.qb).sign();
        k.square = c.qb * c.qb * op.rho;
        k.prod = c.qc * op.rho;
        k.partition = c.partition;
        key.classes.push_back(k);
    }
    std::sort(key.classes.begin(), key.classes.end());
    return key;
}

std::string spectrum_display(const ScaledOp& op) {
    if (auto s = op.rho.sqrt_exact()) {
        MatQ t = *s * op.M;
        return pseudolin::spectrum(t).str();
    }
    PolyQ p = pseudolin::char_poly(op.M);
    CharFactorization f = factor_rational_quadratic(p);
    std::string out = "{";
    bool first = true;
    auto add = [&](const std::string& s, int mult) {
        if (!first) out += ", ";
        first = false;
        out += s;
        if (mult > 1) out += " x" + std::to_string(mult);
    };
    for (const auto& [r, mult] : f.roots) {
        Rat sq = r * r * op.rho;
        add(sqrt_form(r.sign(), sq), mult);
    }
    for (const auto& q : f.quads)
        add("roots(x^2" + std::string(q.b.sign() >= 0 ? "+" : "") + q.b.str() + "*sqrt(rho)*x" +
                std::string(q.c.sign() >= 0 ? "+" : "") + q.c.str() + "*rho), rho=" + op.rho.str(),
            q.mult);
    if (!f.complete()) add("unfactored(" + f.residual.str() + ")", 1);
    return out + "}";
}

}  // namespace curvlab
