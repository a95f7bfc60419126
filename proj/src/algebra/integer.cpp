#include "fieldcount/algebra/integer.hpp"

#include <algorithm>
#include <mutex>

#include "fieldcount/errors.hpp"

namespace fieldcount::algebra {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Integer from_i128(i128 x) {
    const bool neg = x < 0;
    const unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
    const std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    Integer r;
    mpz_import(r.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) r = -r;
    return r;
}

bool fits_i128(const Integer& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 126; }

i128 to_i128(const Integer& x) {
    if (!fits_i128(x)) throw DomainError("integer does not fit in 128 bits");
    std::uint64_t words[2] = {0, 0};
    std::size_t count = 0;
    mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
    const i128 v = static_cast<i128>((static_cast<unsigned __int128>(words[1]) << 64) | words[0]);
    return x < 0 ? -v : v;
}

std::string to_string(i128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer isqrt(const Integer& x) {
    if (x < 0) throw DomainError("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& x) { return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0; }

bool is_prime(const Integer& x) { return x > 1 && mpz_probab_prime_p(x.get_mpz_t(), 40) != 0; }

bool is_prime_u64(std::uint64_t x) {
    Integer z;
    mpz_set_ui(z.get_mpz_t(), x);
    return is_prime(z);
}

namespace {

const std::vector<std::uint32_t>& prime_table() {
    static std::vector<std::uint32_t> table;
    static std::once_flag once;
    std::call_once(once, [] {
        std::vector<bool> composite(kPrimeTableLimit + 1, false);
        for (std::uint32_t i = 2; i <= kPrimeTableLimit; ++i) {
            if (composite[i]) continue;
            table.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kPrimeTableLimit; j += i) composite[j] = true;
        }
    });
    return table;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Integer rho_factor(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto step = [&](Integer& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    Integer d = x - y;
                    if (d < 0) d = -d;
                    q = (q * d) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                Integer d = x - ys;
                if (d < 0) d = -d;
                g = gcd(d, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_rest(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (is_perfect_square(n)) {
        Integer r = isqrt(n);
        split_rest(r, out);
        split_rest(r, out);
        return;
    }
    Integer d = rho_factor(n);
    split_rest(d, out);
    split_rest(Integer(n / d), out);
}

}  // namespace

std::span<const std::uint32_t> primes_up_to(std::uint32_t bound) {
    if (bound > kPrimeTableLimit) throw DomainError("primes_up_to: bound above prime table limit");
    const auto& t = prime_table();
    auto end = std::upper_bound(t.begin(), t.end(), bound);
    return {t.data(), static_cast<std::size_t>(end - t.begin())};
}

std::uint32_t nth_prime(std::size_t i) {
    const auto& t = prime_table();
    if (i >= t.size()) throw DomainError("nth_prime: index beyond prime table");
    return t[i];
}

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& x) {
    if (x == 0) throw DomainError("factor_integer: zero has no factorization");
    Integer n = abs(x);
    std::vector<std::pair<Integer, unsigned>> out;
    const auto& table = prime_table();
    constexpr std::uint32_t kTrialLimit = 1u << 16;
    for (std::uint32_t p : table) {
        if (p > kTrialLimit) break;
        if (Integer(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out.emplace_back(Integer(p), e);
        }
    }
    if (n > 1) {
        std::vector<Integer> rest;
        split_rest(n, rest);
        std::sort(rest.begin(), rest.end());
        for (const auto& p : rest) {
            if (!out.empty() && out.back().first == p) {
                ++out.back().second;
            } else {
                out.emplace_back(p, 1);
            }
        }
    }
    return out;
}

Integer square_part_root(const Integer& x) {
    Integer s = 1;
    for (const auto& [p, e] : factor_integer(x)) {
        for (unsigned i = 0; i < e / 2; ++i) s *= p;
    }
    return s;
}

std::vector<Integer> primes_with_square_dividing(const Integer& x) {
    std::vector<Integer> out;
    for (const auto& [p, e] : factor_integer(x)) {
        if (e >= 2) out.push_back(p);
    }
    return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_of(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Integer ceil_of(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

}  // namespace fieldcount::algebra
