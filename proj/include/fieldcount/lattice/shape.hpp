#pragma once

#include <vector>

#include "fieldcount/fields/enumerate.hpp"

namespace fieldcount::lattice {

using algebra::Integer;
using algebra::QMatrix;
using algebra::Rational;
using fields::FieldRecord;

enum class Sublattice { FullOrder, TraceZero };

struct TraceLattice {
    Sublattice kind = Sublattice::FullOrder;
    QMatrix basis;  // rows: elements in the power basis of the defining polynomial
    QMatrix gram;   // Tr(b_i b_j)
};

// Exact Gram matrix Tr(b_i b_j) of the given elements (rows in the power basis of f),
// from the power sums of f.
QMatrix trace_form_gram(const algebra::MonicIntPoly& f, const QMatrix& basis);

// Trace-form lattice of the maximal order or of its trace-zero part (LLL-reduced basis).
// Totally real fields only.
TraceLattice trace_gram(const FieldRecord& field, Sublattice kind);

struct MinimaProfile {
    std::vector<Rational> minima;                  // squared successive minima, nondecreasing
    std::vector<std::vector<Integer>> witnesses;   // coordinates in the lattice basis
};

// Exact successive minima of a positive-definite rational Gram matrix.
MinimaProfile successive_minima(const QMatrix& gram);

// Squared Minkowski second theorem: prod a_i <= gamma_k^k det(gram) (gamma = Hermite constant).
bool minkowski_product_bound(const MinimaProfile& profile, const Rational& det_gram);
Rational hermite_power(int k);  // gamma_k^k, k <= 8

// Successive minima of T2 on the maximal order of any signature (floating Gram,
// exact integer witnesses in order coordinates). Totally real fields use the exact trace form.
struct T2Minima {
    std::vector<double> minima;
    std::vector<std::vector<Integer>> witnesses;
};
T2Minima t2_minima(const FieldRecord& field);

// True for fields with no proper intermediate subfield certified by degree or Galois label.
bool certified_primitive(const FieldRecord& field);

struct PrimitiveReport {
    std::vector<Rational> minima;  // trace-zero lattice, squared
    std::vector<double> ratios;    // a_1 a_j / a_{j+1}, j = 1..k-1
    double product_over_sqrt_disc = 0;
    double exponent = 0;           // 1/(floor(sqrt(2n)) - 1)
    double kappa = 0;              // a_{n-1} / |disc|^exponent
};
PrimitiveReport check_primitive_constraints(const FieldRecord& field);

struct ShapePoint {
    Rational A, B, C;  // reduced form A x^2 + B x y + C y^2
    double x = 0, y = 0;
};
// Gauss reduction of a positive-definite binary Gram matrix.
ShapePoint shape_point(const QMatrix& gram2);
// Shape of a totally real cubic field (its trace-zero lattice).
ShapePoint shape_point(const FieldRecord& field);
bool in_fundamental_domain(const ShapePoint& p, double tol = 1e-12);

struct SofL {
    double s_squared = 0;         // max_i |sigma_i(x)|^2
    double error_bound = 0;       // bound on |computed - true| s_squared
    std::vector<Integer> witness; // order coordinates
    algebra::QPoly witness_poly;  // witness in the power basis
    double t2 = 0;
    double kappa1 = 0;            // |disc|^{2/(n(n-1))} / s^2
    double kappa2 = 0;            // s^2 / |disc|^{1/floor((n-1)/2)} (n >= 3)
};
// Smallest sup-norm of an integral generator, via T2 shells (sup^2 <= T2 <= n sup^2).
SofL s_of_L(const FieldRecord& field);

struct Lemma31Report {
    std::vector<double> ratios;  // a_1 / |disc|^{2/(n(n-1))}, per field
    double min_ratio = 0;
};
Lemma31Report lemma31_check(const std::vector<FieldRecord>& pool);

}  // namespace fieldcount::lattice
