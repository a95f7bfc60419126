#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fieldcount/fields/galois.hpp"
#include "fieldcount/fields/hunter.hpp"
#include "fieldcount/fields/order.hpp"

namespace fieldcount::fields {

struct FieldRecord {
    MonicIntPoly min_poly;
    Integer poly_disc;
    Integer field_disc;
    Integer index;
    int r1 = 0, r2 = 0;
    GaloisLabel galois;
    int stage = 0;
    QMatrix order_basis;  // rows: Z-basis of the maximal order in the power basis of min_poly

    int degree() const { return min_poly.degree(); }
    friend bool operator==(const FieldRecord& a, const FieldRecord& b) {
        return a.min_poly == b.min_poly && a.poly_disc == b.poly_disc && a.field_disc == b.field_disc &&
               a.index == b.index && a.r1 == b.r1 && a.r2 == b.r2 && a.galois == b.galois && a.stage == b.stage;
    }
};

// Builds the record for a defining polynomial (maximal order, signature, Galois label).
FieldRecord make_record(const MonicIntPoly& f, int stage, int galois_samples);

// Order used for reports: |field_disc|, then field_disc, then canonical polynomial order.
bool record_less(const FieldRecord& a, const FieldRecord& b);

// Spec's sup-norm coefficient box: |a_{n-i}| <= binom(n,i) Y^i.
struct EnumBox {
    int degree = 2;
    Rational height = 1;
    bool trace_zero = true;
    // Inclusive bound on |a_{n-i}|, i = 1..n (index i-1).
    std::vector<Integer> bounds() const;
};

// Every monic polynomial in the box, in canonical order.
void enumerate_polys(const EnumBox& box, const std::function<void(const MonicIntPoly&)>& visit);

enum class FieldFilter { Any, SnOnly };

struct EnumerationOptions {
    FieldFilter filter = FieldFilter::Any;
    bool parallel = true;
    int galois_samples = 200;
    // Stage resumption: records already known for stages <= resume_stage.
    int resume_stage = -1;
    std::vector<FieldRecord> resume_records;
    // Called after each completed stage with the records first found in it.
    std::function<void(int stage, const std::vector<FieldRecord>&)> on_stage_complete;
};

struct EnumerationMetadata {
    int degree = 0;
    Integer disc_bound;
    double hunter_bound = 0;           // gamma_{n-1} (X/n)^{1/(n-1)}
    std::vector<double> stage_bounds;  // centred-T2 bound per stage (2^s, last capped)
    bool complete = true;              // guaranteed complete for all fields (false: imprimitive quartics incidental)
    std::string completeness_note;
    long long box_polynomials = 0;
    long long candidates = 0;       // passed the discriminant, stage and irreducibility filters
    long long orders_computed = 0;  // registry misses that needed a maximal order
    long long registry_repairs = 0; // misses that turned out isomorphic to a known field
    long long late_discoveries = 0; // fields whose representative has an earlier stage
};

struct EnumerationResult {
    std::vector<FieldRecord> records;       // sorted by record_less
    std::vector<FieldRecord> undetermined;  // SnOnly: undetermined labels, reported separately
    EnumerationMetadata metadata;
};

EnumerationResult enumerate_fields(int n, const Integer& X, const EnumerationOptions& options = {});

// Stage schedule for (n, X): centred-T2 bounds 2^0, 2^1, ..., capped by the Hunter bound.
std::vector<double> stage_schedule(int n, const Integer& X);

// All charpolys of elements of the order with trace in [0, n/2] that generate
// the field and have poly_stage <= max_stage, with their stages.
std::vector<std::pair<PolyKey, int>> field_generators(const Order& order, int max_stage);

// Candidate produced by a sweep of one stage.
struct Candidate {
    PolyKey key;
    int stage;
};

struct SweepSpec {
    int degree;
    int stage;
    double bound;       // centred T2 bound for this stage
    Integer disc_bound; // X
    bool last_stage;
};

using Registry = std::unordered_map<PolyKey, int, PolyKeyHash>;

struct SweepStats {
    long long box_polynomials = 0;
};

// Box sweep for one stage; returns candidates (not yet in the registry,
// irreducible, stage-exact, kernel of disc below X) in canonical order.
std::vector<Candidate> sweep_stage_serial(const SweepSpec& spec, const Registry& registry, SweepStats* stats = nullptr);
std::vector<Candidate> sweep_stage_parallel(const SweepSpec& spec, const Registry& registry, SweepStats* stats = nullptr);

}  // namespace fieldcount::fields
