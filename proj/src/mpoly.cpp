#include "curvlab/mpoly.hpp"

#include <cctype>
#include <stdexcept>

namespace curvlab {

namespace {

void trim_key(MPoly::Key& k) {
    while (!k.empty() && k.back() == 0) k.pop_back();
}

}  // namespace

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    if (!c.is_zero()) p.terms_[{}] = c;
    return p;
}

MPoly MPoly::var(int index, int power) {
    if (index < 0 || power < 0) throw std::invalid_argument("MPoly::var: bad index/power");
    if (power == 0) return constant(Rat(1));
    MPoly p;
    Key k(static_cast<std::size_t>(index) + 1, 0);
    k[static_cast<std::size_t>(index)] = power;
    p.terms_[std::move(k)] = Rat(1);
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    return terms_.begin()->second;
}

void MPoly::add_term(Key k, const Rat& c) {
    if (c.is_zero()) return;
    trim_key(k);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (const auto& [k, v] : terms_) r.terms_[k] = -v;
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [k, v] : b.terms_) r.add_term(k, v);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [k, v] : b.terms_) r.add_term(k, -v);
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ka, va] : a.terms_)
        for (const auto& [kb, vb] : b.terms_) {
            MPoly::Key k(std::max(ka.size(), kb.size()), 0);
            for (std::size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
            for (std::size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
            r.add_term(std::move(k), va * vb);
        }
    return r;
}

MPoly operator*(const Rat& s, const MPoly& p) {
    MPoly r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : p.terms_) r.terms_[k] = s * v;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
    MPoly r = constant(Rat(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r;
    for (const auto& [k, v] : terms_) {
        if (static_cast<int>(k.size()) <= var || k[static_cast<std::size_t>(var)] == 0) continue;
        Key nk = k;
        int e = nk[static_cast<std::size_t>(var)];
        nk[static_cast<std::size_t>(var)] = e - 1;
        r.add_term(std::move(nk), Rat(e) * v);
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    Rat acc(0);
    for (const auto& [k, v] : terms_) {
        Rat t = v;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (i >= point.size()) throw std::invalid_argument("MPoly::eval: point too short");
            t *= point[i].pow(k[i]);
        }
        acc += t;
    }
    return acc;
}

int MPoly::max_var() const {
    int mv = -1;
    for (const auto& [k, v] : terms_) {
        (void)v;
        mv = std::max(mv, static_cast<int>(k.size()) - 1);
    }
    return mv;
}

std::string MPoly::str(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : terms_) {
        std::string term = v.str();
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            term += "*" + name(static_cast<int>(i));
            if (k[i] > 1) term += "^" + std::to_string(k[i]);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

// --- RatFn -------------------------------------------------------------------

RatFn::RatFn(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("RatFn: zero denominator");
    if (num_.is_zero()) {
        den_ = MPoly::constant(Rat(1));
        return;
    }
    if (den_.is_constant()) {
        num_ = (Rat(1) / den_.constant_value()) * num_;
        den_ = MPoly::constant(Rat(1));
    }
}

bool RatFn::den_is_one() const {
    return den_.is_constant() && den_.constant_value() == Rat(1);
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_); }

RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return RatFn();
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("RatFn: division by zero");
    if (a.is_zero()) return RatFn();
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
}

RatFn RatFn::derivative(int var) const {
    if (den_is_one()) return RatFn(num_.derivative(var));
    MPoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFn(std::move(n), den_ * den_);
}

Rat RatFn::eval(const std::vector<Rat>& point) const {
    Rat d = den_.eval(point);
    if (d.is_zero()) throw std::domain_error("RatFn::eval: denominator vanishes at point");
    return num_.eval(point) / d;
}

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (b.is_constant()) return (Rat(1) / b.constant_value()) * a;
    MPoly rem = a, quo;
    // Long division against the lexicographically largest term of b.
    const auto& bl = *b.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms().rbegin();
        MPoly::Key qk(std::max(rl.first.size(), bl.first.size()), 0);
        for (std::size_t i = 0; i < qk.size(); ++i) {
            int re = i < rl.first.size() ? rl.first[i] : 0;
            int be = i < bl.first.size() ? bl.first[i] : 0;
            if (re < be) return std::nullopt;
            qk[i] = re - be;
        }
        MPoly qt;
        qt.add_term(std::move(qk), rl.second / bl.second);
        quo = quo + qt;
        rem = rem - qt * b;
    }
    return quo;
}

// --- DSL parser ----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const std::function<int(const std::string&)>& lookup;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }

    MPoly expr() {
        MPoly acc = accept('-') ? -term() : term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    MPoly term() {
        MPoly acc = factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                MPoly d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
                acc = (Rat(1) / d.constant_value()) * acc;
            } else {
                return acc;
            }
        }
    }

    MPoly factor() {
        MPoly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("expected integer exponent");
            base = base.pow(std::stoi(s.substr(start, pos - start)));
        }
        return base;
    }

    MPoly primary() {
        skip();
        if (accept('(')) {
            MPoly e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (accept('-')) return -primary();
        if (pos >= s.size()) fail("unexpected end of input");
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
                ++pos;
            return MPoly::constant(Rat::parse(s.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            int idx = lookup(name);
            if (idx < 0) fail("unknown variable '" + name + "'");
            return MPoly::var(idx);
        }
        fail("unexpected character");
    }
};

}  // namespace

MPoly parse_mpoly(const std::string& text,
                  const std::function<int(const std::string&)>& lookup) {
    Parser p{text, 0, lookup};
    MPoly result = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return result;
}

}  // namespace curvlab
