#include "fieldcount/fields/galois.hpp"

#include <algorithm>
#include <set>

#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/algebra/fp_poly.hpp"
#include "fieldcount/fields/isomorphism.hpp"

namespace fieldcount::fields {

using algebra::Integer;
using algebra::MonicIntPoly;
using algebra::ZPoly;

std::string GaloisLabel::to_string() const {
    switch (kind) {
        case GaloisKind::SnCertified: return "Sn";
        case GaloisKind::Other: return "other:" + description;
        default: return "undetermined";
    }
}

GaloisLabel GaloisLabel::parse(const std::string& text) {
    if (text == "Sn") return {GaloisKind::SnCertified, ""};
    if (text == "undetermined") return {GaloisKind::Undetermined, ""};
    if (text.rfind("other:", 0) == 0) return {GaloisKind::Other, text.substr(6)};
    throw DomainError("unknown Galois label: " + text);
}

bool GaloisLabel::heuristic() const { return description.find("consistent with") != std::string::npos; }

bool GaloisLabel::is_galois(int degree) const {
    if (degree == 2) return true;
    if (kind != GaloisKind::Other) return false;
    switch (degree) {
        case 3: return description == "consistent with A3";
        case 4: return description == "consistent with V4" || description == "consistent with C4";
        case 5: return description == "contained in A5; consistent with C5";
        default: return false;
    }
}

bool sn_certified_by_types(int n, const std::vector<std::vector<int>>& types) {
    if (n <= 2) return true;
    bool transposition = false, primitive = algebra::is_prime_u64(static_cast<std::uint64_t>(n));
    for (const auto& t : types) {
        if (t.size() == static_cast<std::size_t>(n - 1) && t.back() == 2) transposition = true;
        for (int c : t)
            if (2 * c > n && c < n && algebra::is_prime_u64(static_cast<std::uint64_t>(c))) primitive = true;
    }
    return transposition && primitive;
}

ZPoly resolvent_cubic(const MonicIntPoly& f) {
    if (f.degree() != 4) throw DomainError("resolvent cubic needs a quartic");
    const Integer b = f.coeff(3), c = f.coeff(2), d = f.coeff(1), e = f.coeff(0);
    // y^3 - c y^2 + (bd - 4e) y - (b^2 e - 4ce + d^2)
    return ZPoly{-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, Integer(1)};
}

namespace {

bool has_type(const std::vector<std::vector<int>>& types, const std::vector<int>& t) {
    return std::find(types.begin(), types.end(), t) != types.end();
}

int rational_root_count(const ZPoly& p) {
    int count = 0;
    for (const auto& [g, e] : algebra::factor_over_Z(p))
        if (g.degree() == 1) count += static_cast<int>(e);
    return count;
}

}  // namespace

GaloisLabel galois_type(const MonicIntPoly& f, int sample_primes) {
    const int n = f.degree();
    if (!algebra::is_irreducible(f.to_zpoly())) throw DomainError("galois_type needs an irreducible polynomial");
    if (n <= 2) return {GaloisKind::SnCertified, ""};
    std::vector<std::vector<int>> types;
    const ZPoly fz = f.to_zpoly();
    for (std::size_t i = 0; static_cast<int>(types.size()) < sample_primes; ++i) {
        auto t = algebra::splitting_type(fz, algebra::nth_prime(i));
        if (t.empty()) continue;
        types.push_back(std::move(t));
        if (sn_certified_by_types(n, types)) return {GaloisKind::SnCertified, ""};
    }
    const bool square = algebra::is_perfect_square(algebra::poly_discriminant(f));
    switch (n) {
        case 3:
            // The only transitive groups are A3 (square discriminant) and S3.
            if (square) return {GaloisKind::Other, "consistent with A3"};
            return {GaloisKind::SnCertified, ""};
        case 4: {
            const int roots = rational_root_count(resolvent_cubic(f));
            if (roots == 0) {
                if (square) return {GaloisKind::Other, "A4"};
                return {GaloisKind::SnCertified, ""};
            }
            if (roots == 3) return {GaloisKind::Other, "consistent with V4"};
            // Contained in D4; C4 has no element of type (1,1,2).
            if (has_type(types, {1, 1, 2})) return {GaloisKind::Other, "D4"};
            return {GaloisKind::Other, "consistent with C4"};
        }
        case 5: {
            if (square) {
                if (has_type(types, {1, 1, 3})) return {GaloisKind::Other, "A5"};
                if (has_type(types, {1, 2, 2})) return {GaloisKind::Other, "contained in A5; consistent with D5"};
                return {GaloisKind::Other, "contained in A5; consistent with C5"};
            }
            // Odd transitive groups of degree 5 are F20 and S5; F20 has types 5, 1+4, 1+2+2, 1^5.
            for (const auto& t : types)
                if (t != std::vector<int>{5} && t != std::vector<int>{1, 4} && t != std::vector<int>{1, 2, 2} &&
                    t != std::vector<int>{1, 1, 1, 1, 1})
                    return {GaloisKind::SnCertified, ""};
            return {GaloisKind::Undetermined, ""};
        }
        default:
            if (square) return {GaloisKind::Other, "contained in A" + std::to_string(n)};
            return {GaloisKind::Undetermined, ""};
    }
}

}  // namespace fieldcount::fields
