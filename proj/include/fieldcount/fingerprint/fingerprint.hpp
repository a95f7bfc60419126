#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fieldcount/algebra/mpoly.hpp"
#include "fieldcount/fields/enumerate.hpp"

namespace fieldcount::fingerprint {

using algebra::Integer;
using algebra::MonicIntPoly;
using algebra::MPoly;
using algebra::QMatrix;
using algebra::QPoly;
using algebra::Rational;
using fields::FieldRecord;

// sigma = (i_1, ..., i_r).
struct ExponentVector {
    std::vector<unsigned> e;

    std::size_t arity() const { return e.size(); }
    unsigned degree() const;
    static ExponentVector zero(std::size_t r) { return {std::vector<unsigned>(r, 0)}; }
    static ExponentVector unit(std::size_t r, std::size_t k);
    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    // Graded lexicographic: degree first, then entries descending lexicographically
    // ((1,0) before (0,1)).
    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);
};

// All exponent vectors of arity r and degree <= d, in graded-lex order.
std::vector<ExponentVector> exponents_up_to(std::size_t r, unsigned d);

struct SigmaSet {
    std::size_t r = 1;
    unsigned c = 1;
    std::vector<ExponentVector> sigma0;  // degree <= c
    std::vector<ExponentVector> sigma1;  // degree <= 2c
    std::vector<ExponentVector> sigma;   // degree <= 4c

    static SigmaSet make(std::size_t r, unsigned c);
    // Sigma0+Sigma0 in Sigma1; Sigma1+Sigma1 and Sigma1+e_k in Sigma (by set lookup).
    bool inclusions_hold() const;
};

// r and c from the default rule (r = max k, k^2 <= ln n; least c with c^r >= n r!); throws if the chain c >= r, binom(r+c,r) > n,
// binom(r+4c,r) <= 10^r n fails.
SigmaSet sigma_sets_paper(unsigned long n);

// Elements of Q[x]/(f) in the power basis.
QPoly chi(const ExponentVector& s, const std::vector<QPoly>& tuple, const MonicIntPoly& f);
Integer f_sigma(const ExponentVector& s, const std::vector<QPoly>& tuple, const MonicIntPoly& f);
// Multisymmetric form on n points of Q^r: sum_i prod_k x_{i,k}^{s_k}.
Rational f_sigma_points(const ExponentVector& s, const std::vector<std::vector<Rational>>& points);

struct Independence {
    std::size_t rank = 0;
    bool independent = false;
};
Independence independence_test(const std::vector<QPoly>& tuple, const std::vector<ExponentVector>& sigma0,
                               const MonicIntPoly& f);

// Point with |a_i| <= ceil((d+1)/2) and D(a) != 0, by fixing one coordinate at a time.
std::vector<Integer> small_nonvanishing_point(const MPoly& D);

struct TupleCertificate {
    std::size_t m = 0;           // number of minima used
    std::size_t rank_sigma0 = 0; // over the first m elements of Sigma0
    std::size_t rank_sigma1 = 0; // must equal n
    unsigned height = 0;         // coefficient bound H that succeeded
    std::size_t tried = 0;       // coefficient vectors examined
    double max_t2 = 0;           // max_k T2(alpha_k)
    double constant = 0;         // max_t2 / |disc|^{2/(n-2)}
    bool certified = false;
};

struct OrderTuple {
    FieldRecord field;
    std::vector<QPoly> elements;                       // alpha_1..alpha_r
    std::vector<std::vector<Integer>> gamma;           // minima, order coordinates
    std::vector<std::vector<long>> coefficients;       // c_{j,k}, row k
    TupleCertificate certificate;
};

class TupleSearchFailure : public DomainError {
  public:
    using DomainError::DomainError;
};

OrderTuple construct_tuple(const FieldRecord& field, const SigmaSet& S, unsigned h_max = 64);

// Values indexed like `sigma`; value at zero = n.
struct Fingerprint {
    std::size_t r = 1;
    unsigned c = 0;  // 0 when built from an ad-hoc exponent list
    std::vector<ExponentVector> sigma;
    std::vector<Integer> values;

    const Integer& at(const ExponentVector& s) const;
    bool has(const ExponentVector& s) const;
};

Fingerprint fingerprint_field(const OrderTuple& tuple, const SigmaSet& S);

struct Reconstruction {
    std::size_t n = 0;
    std::vector<ExponentVector> base;  // chosen sigma_a
    QMatrix gram;
    std::vector<QMatrix> mult;         // M_k
    std::vector<QPoly> charpolys;
};

// Base candidates in canonical order; every needed sum must be in the fingerprint.
Reconstruction reconstruct(const Fingerprint& fp, const std::vector<ExponentVector>& base_candidates);
Reconstruction reconstruct(const Fingerprint& fp);  // candidates: all sigma with sigma+sigma' available

bool matrices_commute(const Reconstruction& rec);
// Tr(M_1^{i_1} ... M_r^{i_r}) for every sigma of fp; true iff all agree exactly.
bool roundtrip(const Reconstruction& rec, const Fingerprint& fp);

// Permutations of {1..n} written in cycle notation, e.g. "(1,6,2)(3,4,5)"; returns 0-based images.
std::vector<std::size_t> parse_permutation(std::string_view cycles, std::size_t n);
bool check_invariance(const MPoly& P, const std::vector<std::vector<std::size_t>>& gens);
// Degree-3 invariant in x1..x6 of the transitive PSL2(F5) action on six points.
MPoly f6();

}  // namespace fieldcount::fingerprint
