#include "fieldcount/algebra/poly.hpp"

#include <cctype>
#include <sstream>

#include "fieldcount/algebra/matrix.hpp"

namespace fieldcount::algebra {

QPoly to_qpoly(const ZPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return QPoly(std::move(c));
}

ZPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return {};
    Integer l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.push_back(v.get_num() * (l / v.get_den()));
    ZPoly z(std::move(c));
    Integer g = content(z);
    if (z.lead() < 0) g = -g;
    std::vector<Integer> out;
    for (const auto& v : z.coeffs()) out.push_back(v / g);
    return ZPoly(std::move(out));
}

Integer content(const ZPoly& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

QPoly monic(const QPoly& p) {
    if (p.is_zero()) return p;
    Rational inv = 1 / p.lead();
    return inv * p;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

Integer resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    const int m = a.degree(), n = b.degree();
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), a.lead().get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), b.lead().get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    const std::size_t N = static_cast<std::size_t>(m + n);
    ZMatrix s(N, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a.coeff(static_cast<std::size_t>(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b.coeff(static_cast<std::size_t>(n - j));
    return determinant(s);
}

int count_real_roots(const ZPoly& f) {
    if (f.degree() <= 0) return 0;
    QPoly g = to_qpoly(f);
    g = g / gcd(g, g.derivative());  // squarefree part
    std::vector<QPoly> seq{g, g.derivative()};
    while (seq.back().degree() > 0) {
        QPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto sign_changes = [&](bool at_pos_inf) {
        int changes = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(p.lead());
            if (!at_pos_inf && p.degree() % 2 == 1) s = -s;
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    return sign_changes(false) - sign_changes(true);
}

MonicIntPoly::MonicIntPoly(std::vector<Integer> lower) : a_(std::move(lower)) {
    if (a_.empty()) throw DomainError("monic polynomial must have degree >= 1");
}

MonicIntPoly MonicIntPoly::from_zpoly(const ZPoly& p) {
    if (p.degree() < 1 || p.lead() != 1) throw DomainError("polynomial is not monic of degree >= 1");
    std::vector<Integer> lower(p.coeffs().begin(), p.coeffs().end() - 1);
    return MonicIntPoly(std::move(lower));
}

MonicIntPoly MonicIntPoly::parse(std::string_view text) { return from_zpoly(parse_zpoly(text)); }

ZPoly MonicIntPoly::to_zpoly() const {
    std::vector<Integer> c(a_);
    c.emplace_back(1);
    return ZPoly(std::move(c));
}

std::string MonicIntPoly::to_string() const { return format_poly(to_zpoly()); }

std::strong_ordering operator<=>(const MonicIntPoly& x, const MonicIntPoly& y) {
    if (auto c = x.degree() <=> y.degree(); c != 0) return c;
    for (int i = x.degree() - 1; i >= 0; --i) {
        const int c = cmp(x.a_[static_cast<std::size_t>(i)], y.a_[static_cast<std::size_t>(i)]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Integer poly_discriminant(const ZPoly& f) {
    const int n = f.degree();
    if (n < 2) throw DomainError("discriminant needs degree >= 2");
    Integer r = resultant(f, f.derivative());
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    if (f.lead() != 1) {
        if (r % f.lead() != 0) throw InternalConsistencyError("resultant not divisible by leading coefficient");
        r /= f.lead();
    }
    return r;
}

Integer poly_discriminant(const MonicIntPoly& f) { return poly_discriminant(f.to_zpoly()); }

std::string format_poly(const ZPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Integer c = p.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        const bool neg = c < 0;
        Integer a = abs(c);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << '*';
        os << var;
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

ZPoly parse_zpoly(std::string_view text, char var) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw DomainError("empty polynomial");
    std::vector<Integer> coeffs;
    std::size_t i = 0;
    auto add = [&](std::size_t k, const Integer& v) {
        if (coeffs.size() <= k) coeffs.resize(k + 1, Integer(0));
        coeffs[k] += v;
    };
    auto read_uint = [&](std::string& out) {
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw DomainError("malformed polynomial: " + std::string(text));
        }
        std::string num;
        read_uint(num);
        Integer c = num.empty() ? Integer(1) : Integer(num);
        std::size_t k = 0;
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (num.empty()) throw DomainError("malformed polynomial: " + std::string(text));
        }
        if (i < s.size() && s[i] == var) {
            ++i;
            k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                read_uint(e);
                if (e.empty()) throw DomainError("malformed exponent: " + std::string(text));
                k = std::stoul(e);
            }
        } else if (num.empty()) {
            throw DomainError("malformed polynomial: " + std::string(text));
        }
        add(k, sign * c);
    }
    return ZPoly(std::move(coeffs));
}

}  // namespace fieldcount::algebra

std::size_t std::hash<fieldcount::algebra::MonicIntPoly>::operator()(
    const fieldcount::algebra::MonicIntPoly& f) const noexcept {
    std::size_t h = static_cast<std::size_t>(f.degree()) * 0x9e3779b97f4a7c15ULL;
    for (const auto& v : f.lower()) {
        const std::size_t x = mpz_fits_slong_p(v.get_mpz_t()) ? static_cast<std::size_t>(v.get_si())
                                                                : std::hash<std::string>{}(v.get_str());
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}
