#include "fieldcount/algebra/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fieldcount/errors.hpp"

namespace fieldcount::algebra {

MPoly MPoly::constant(std::vector<std::string> vars, const Integer& c) {
    MPoly p(std::move(vars));
    p.add_term(Monomial(p.vars_.size(), 0), c);
    return p;
}

MPoly MPoly::variable(std::vector<std::string> vars, std::size_t index) {
    MPoly p(std::move(vars));
    Monomial m(p.vars_.size(), 0);
    m.at(index) = 1;
    p.add_term(m, 1);
    return p;
}

void MPoly::add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

unsigned MPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : t_) {
        unsigned s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Integer MPoly::eval(const std::vector<Integer>& x) const {
    if (x.size() != vars_.size()) throw DomainError("wrong number of variables");
    Integer r = 0;
    for (const auto& [m, c] : t_) {
        Integer term = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), m[i]);
            term *= pw;
        }
        r += term;
    }
    return r;
}

std::int64_t MPoly::eval_mod(const std::vector<std::int64_t>& x, std::int64_t mod) const {
    if (x.size() != vars_.size()) throw DomainError("wrong number of variables");
    using u128 = unsigned __int128;
    const auto M = static_cast<std::uint64_t>(mod);
    auto norm = [&](std::int64_t v) {
        std::int64_t r = v % mod;
        return static_cast<std::uint64_t>(r < 0 ? r + mod : r);
    };
    std::uint64_t acc = 0;
    for (const auto& [m, c] : t_) {
        Integer cr = c % static_cast<unsigned long>(M);
        if (cr < 0) cr += static_cast<unsigned long>(M);
        std::uint64_t term = cr.get_ui();
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::uint64_t b = norm(x[i]);
            for (unsigned e = 0; e < m[i]; ++e) term = static_cast<std::uint64_t>((static_cast<u128>(term) * b) % M);
        }
        acc = (acc + term) % M;
    }
    return static_cast<std::int64_t>(acc);
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) throw DomainError("variable mismatch");
    MPoly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) throw DomainError("variable mismatch");
    MPoly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) throw DomainError("variable mismatch");
    MPoly r(a.vars_);
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            MPoly::Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MPoly MPoly::substitute(std::size_t index, const Integer& value) const {
    if (index >= vars_.size()) throw DomainError("substitute: variable index out of range");
    MPoly out(vars_);
    for (const auto& [m, c] : t_) {
        Monomial mm = m;
        Integer v;
        mpz_pow_ui(v.get_mpz_t(), value.get_mpz_t(), m[index]);
        mm[index] = 0;
        out.add_term(mm, c * v);
    }
    return out;
}

MPoly MPoly::permute(const std::vector<std::size_t>& perm) const {
    if (perm.size() != vars_.size()) throw DomainError("permute: permutation size mismatch");
    MPoly out(vars_);
    for (const auto& [m, c] : t_) {
        Monomial mm(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) mm[perm[i]] += m[i];
        out.add_term(mm, c);
    }
    return out;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r = constant(vars_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string MPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first.
    std::vector<std::pair<Monomial, Integer>> items(t_.begin(), t_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        unsigned dx = 0, dy = 0;
        for (auto e : x.first) dx += e;
        for (auto e : y.first) dy += e;
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    for (const auto& [m, c] : items) {
        const bool neg = c < 0;
        Integer a = abs(c);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool any = false;
        if (a != 1) {
            os << a.get_str();
            any = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (any) os << '*';
            os << vars_[i];
            if (m[i] > 1) os << '^' << m[i];
            any = true;
        }
        if (!any) os << '1';
    }
    return os.str();
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t i = 0;
    std::vector<std::string> vars;
    bool fixed_vars = false;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("cannot parse polynomial '" + std::string(s) + "': " + what);
    }
    std::size_t var_index(const std::string& name) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it != vars.end()) return static_cast<std::size_t>(it - vars.begin());
        if (fixed_vars) fail("unknown variable " + name);
        vars.push_back(name);
        return vars.size() - 1;
    }

    // Parse into an expression tree of variable-name-indexed terms; variables may
    // be discovered late, so build with a growing variable list and widen at the end.
    using Terms = std::map<std::vector<unsigned>, Integer>;

    static void widen(Terms& t, std::size_t n) {
        Terms out;
        for (auto& [m, c] : t) {
            auto mm = m;
            mm.resize(n, 0);
            out[mm] += c;
        }
        t = std::move(out);
    }
    static Terms add(Terms a, const Terms& b, int sign) {
        std::size_t n = 0;
        for (auto& [m, c] : a) n = std::max(n, m.size());
        for (auto& [m, c] : b) n = std::max(n, m.size());
        widen(a, n);
        Terms bb = b;
        widen(bb, n);
        for (auto& [m, c] : bb) {
            a[m] += sign * c;
            if (a[m] == 0) a.erase(m);
        }
        return a;
    }
    static Terms mul(Terms a, Terms b) {
        std::size_t n = 0;
        for (auto& [m, c] : a) n = std::max(n, m.size());
        for (auto& [m, c] : b) n = std::max(n, m.size());
        widen(a, n);
        widen(b, n);
        Terms r;
        for (auto& [ma, ca] : a)
            for (auto& [mb, cb] : b) {
                std::vector<unsigned> m(n);
                for (std::size_t k = 0; k < n; ++k) m[k] = ma[k] + mb[k];
                r[m] += ca * cb;
                if (r[m] == 0) r.erase(m);
            }
        return r;
    }

    Terms expr() {
        skip();
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        Terms acc = add(Terms{}, term(), sign);
        while (true) {
            skip();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                const int sg = s[i] == '-' ? -1 : 1;
                ++i;
                acc = add(acc, term(), sg);
            } else {
                return acc;
            }
        }
    }
    Terms term() {
        Terms acc = power();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                acc = mul(acc, power());
            } else if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
                acc = mul(acc, power());  // implicit product such as 3x or 2(a+b)
            } else {
                return acc;
            }
        }
    }
    Terms power() {
        Terms base = atom();
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            std::size_t j = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (j == i) fail("expected exponent");
            const unsigned long e = std::stoul(std::string(s.substr(j, i - j)));
            Terms r;
            r[{}] = 1;
            for (unsigned long k = 0; k < e; ++k) r = mul(r, base);
            return r;
        }
        return base;
    }
    Terms atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            Terms t = expr();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return t;
        }
        if (s[i] == '-') {
            ++i;
            return add(Terms{}, power(), -1);
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            Terms t;
            t[{}] = Integer(std::string(s.substr(j, i - j)));
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            std::size_t j = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            const std::size_t idx = var_index(std::string(s.substr(j, i - j)));
            std::vector<unsigned> m(idx + 1, 0);
            m[idx] = 1;
            Terms t;
            t[m] = 1;
            return t;
        }
        fail(std::string("unexpected character '") + s[i] + "'");
    }
};

}  // namespace

MPoly MPoly::parse(std::string_view text, std::vector<std::string> vars) {
    Parser p{text, 0, std::move(vars), false};
    p.fixed_vars = !p.vars.empty();
    auto t = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    MPoly out(p.vars);
    for (auto& [m, c] : t) {
        auto mm = m;
        mm.resize(p.vars.size(), 0);
        out.add_term(mm, c);
    }
    return out;
}

}  // namespace fieldcount::algebra
