// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "fieldcount/bounds/exponents.hpp"
#include "fieldcount/bounds/galois_chain.hpp"
#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/bounds/sqfree.hpp"
#include "fieldcount/fields/isomorphism.hpp"
#include "fieldcount/fingerprint/fingerprint.hpp"
#include "fieldcount/harness/count.hpp"
#include "fieldcount/harness/selftest.hpp"
#include "fieldcount/lattice/shape.hpp"

#ifndef FIELDCOUNT_CLI_PATH
#define FIELDCOUNT_CLI_PATH "fieldcount"
#endif

using namespace fieldcount;
using algebra::Integer;
using algebra::Rational;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << std::setw(2) << id << "  " << title << " -- " << o.detail << " ["
              << std::fixed << std::setprecision(1) << secs << " s]" << std::defaultfloat << std::endl;
}

std::string num(double v, int prec = 4) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Shared pools.
std::map<int, fields::EnumerationResult> pools;  // X = 1e4, n = 3, 4, 5
const fields::EnumerationResult& pool(int n) {
    auto it = pools.find(n);
    if (it == pools.end()) it = pools.emplace(n, fields::enumerate_fields(n, Integer(10000))).first;
    return it->second;
}

// Quadratic oracle: fundamental discriminants of Q(sqrt m), m squarefree.
std::multiset<Integer> quadratic_oracle(long X) {
    std::multiset<Integer> out;
    for (long m = -X; m <= X; ++m) {
        if (m == 0 || m == 1) continue;
        bool sf = true;
        for (long p = 2; p * p <= std::labs(m); ++p) sf = sf && m % (p * p) != 0;
        if (!sf) continue;
        const Integer d = ((m % 4) + 4) % 4 == 1 ? Integer(m) : Integer(4 * m);
        if (abs(d) < X) out.insert(d);
    }
    return out;
}

// Cubic oracle: trace-zero x^3 + b x + c, |b|, |c| <= 30, deduplicated up to isomorphism.
std::multiset<Integer> cubic_oracle(long X) {
    std::vector<algebra::MonicIntPoly> classes;
    std::multiset<Integer> out;
    for (long b = -30; b <= 30; ++b)
        for (long c = -30; c <= 30; ++c) {
            algebra::MonicIntPoly f({Integer(c), Integer(b), Integer(0)});
            if (c == 0 || !algebra::is_irreducible(f.to_zpoly())) continue;
            const Integer d = fields::maximal_order(f).discriminant();
            if (abs(d) >= X) continue;
            bool seen = false;
            for (const auto& g : classes) seen = seen || fields::is_isomorphic(g, f);
            if (!seen) {
                classes.push_back(f);
                out.insert(d);
            }
        }
    return out;
}

std::multiset<Integer> discs(const std::vector<fields::FieldRecord>& rs) {
    std::multiset<Integer> out;
    for (const auto& r : rs) out.insert(r.field_disc);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

int main() {
    const std::uint64_t seed = harness::seed_from_env();
    std::cout << "acceptance run, seed " << seed << std::endl;

    report(1, "exact small counts", [] {
        const auto t0 = Clock::now();
        const auto q = discs(fields::enumerate_fields(2, Integer(21)).records);
        const auto b = discs(fields::enumerate_fields(3, Integer(24)).records);
        const auto c = discs(fields::enumerate_fields(3, Integer(23)).records);
        const bool oracles = q == quadratic_oracle(21) && b == cubic_oracle(24) && c == cubic_oracle(23);
        const double t = elapsed(t0);
        return Outcome{q.size() == 13 && b.size() == 1 && c.empty() && oracles && t < 5.0,
                       "N2(21)=" + std::to_string(q.size()) + " N3(24)=" + std::to_string(b.size()) +
                           " N3(23)=" + std::to_string(c.size()) + ", oracles " + (oracles ? "agree" : "disagree") +
                           " in " + num(t, 3) + " s"};
    });

    harness::CountSeries cubic_any, cubic_sn;
    double cubic_time = 0;
    report(2, "cubic linear growth, slope over [1e3, 3e5] in [0.85, 1.15]", [&] {
        const auto t0 = Clock::now();
        const Integer X(300000);
        const auto res = fields::enumerate_fields(3, X);
        const auto grid = harness::geometric_grid(X, std::pow(10.0, 0.25));
        cubic_any = harness::bin_records(3, res.records, grid, harness::CountFilter::Any);
        cubic_sn = harness::bin_records(3, res.records, grid, harness::CountFilter::SnOnly);
        cubic_time = elapsed(t0);
        const auto fit = harness::slope_fit(cubic_any, Integer(1000));
        return Outcome{fit.slope >= 0.85 && fit.slope <= 1.15 && cubic_time <= 600,
                       "slope " + num(fit.slope) + ", N3(3e5) = " + std::to_string(cubic_any.points.back().count) +
                           ", " + num(cubic_time, 3) + " s"};
    });

    report(3, "S3 cubic slope >= 11/18 - 0.05", [&] {
        const auto fit = harness::slope_fit(cubic_sn, Integer(1000));
        const double target = 11.0 / 18.0 - 0.05;
        return Outcome{fit.slope >= target, "slope " + num(fit.slope) + " (target >= " + num(target) + "), undetermined " +
                                                std::to_string(cubic_sn.points.back().undetermined)};
    });

    report(4, "quartic/quintic slopes below (n+2)/4 over [1e4, 1e5]", [] {
        std::string detail;
        bool ok = true;
        for (int n : {4, 5}) {
            const auto s = harness::count_series(n, Integer(100000), std::pow(10.0, 0.25), harness::CountFilter::Any);
            const auto fit = harness::slope_fit(s, Integer(10000));
            const double bound = (n + 2) / 4.0;
            ok = ok && fit.slope < bound;
            detail += "n=" + std::to_string(n) + ": slope " + num(fit.slope) + " < " + num(bound) + " (N=" +
                      std::to_string(s.points.back().count) + (s.metadata.complete ? "" : ", primitive-complete") + "); ";
        }
        return Outcome{ok, detail};
    });

    report(5, "fingerprint suite on n = 3, 4, 5 pools, X = 1e4", [] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (int n : {3, 4, 5}) {
            const auto& res = pool(n);
            const auto S = fingerprint::sigma_sets_paper(static_cast<unsigned long>(n));
            std::map<std::vector<Integer>, std::vector<std::string>> fibers;
            unsigned hmax = 0;
            double cmax = 0;
            std::size_t failures_here = 0;
            for (const auto& L : res.records) {
                const auto t = fingerprint::construct_tuple(L, S, 64);
                const auto fp = fingerprint::fingerprint_field(t, S);
                const auto rec = fingerprint::reconstruct(fp);
                if (!fingerprint::roundtrip(rec, fp) || !fingerprint::matrices_commute(rec) || fp.values.front() != n)
                    ++failures_here;
                fibers[fp.values].push_back(L.min_poly.to_string());
                hmax = std::max(hmax, t.certificate.height);
                cmax = std::max(cmax, t.certificate.constant);
            }
            std::size_t collisions = 0;
            for (const auto& [v, ps] : fibers)
                if (ps.size() > 1) {
                    ++collisions;
                    std::cout << "  collision in degree " << n << ":";
                    for (const auto& p : ps) std::cout << " [" << p << "]";
                    std::cout << std::endl;
                }
            ok = ok && failures_here == 0 && collisions == 0 && hmax <= 64;
            detail += "n=" + std::to_string(n) + ": " + std::to_string(res.records.size()) + " fields, H<=" +
                      std::to_string(hmax) + ", C=" + num(cmax) + ", collisions " + std::to_string(collisions) + "; ";
        }
        const double t = elapsed(t0);
        return Outcome{ok && t <= 900, detail + num(t, 3) + " s"};
    });

    report(6, "small nonvanishing point on 1000 random polynomials", [&] {
        std::mt19937_64 rng(seed);
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto D = harness::random_polynomial(rng, 4, 6, 9);
            const auto a = fingerprint::small_nonvanishing_point(D);
            const long B = static_cast<long>((D.total_degree() + 2) / 2);
            bool good = D.eval(a) != 0;
            for (const auto& x : a) good = good && abs(x) <= B;
            bad += !good;
        }
        return Outcome{bad == 0, std::to_string(1000 - bad) + "/1000 within the box and nonvanishing"};
    });

    report(7, "f6 invariance under the PSL2(F5) generators", [] {
        const auto P = fingerprint::f6();
        const bool gens = fingerprint::check_invariance(
            P, {fingerprint::parse_permutation("(1,6,2)(3,4,5)", 6), fingerprint::parse_permutation("(5,6)(3,4)", 6)});
        const bool swap = fingerprint::check_invariance(P, {fingerprint::parse_permutation("(1,2)", 6)});
        return Outcome{gens && !swap, std::string("generators ") + (gens ? "true" : "false") + ", (1,2) " +
                                          (swap ? "true" : "false")};
    });

    report(8, "exponent chain and growth shape", [] {
        const auto t0 = Clock::now();
        bool chain = true;
        double sup = 0;
        std::vector<unsigned long> ns;
        for (unsigned long n = 3; n <= 10000; ++n) ns.push_back(n);
        ns.push_back(100000);
        ns.push_back(1000000);
        for (auto n : ns) {
            const auto p = bounds::paper_parameters(n);
            chain = chain && bounds::check_chain(n, p).all();
            sup = std::max(sup, bounds::exponent_shape(bounds::rc_exponent(n, p.r, p.c), n));
        }
        const auto big = bounds::exponent_report(1000000, false);
        const bool beats = big.paper_exponent < big.schmidt;
        const double t = elapsed(t0);
        const double C = 6.0;
        return Outcome{chain && sup <= C && beats && t < 60,
                       std::string("chain ") + (chain ? "holds" : "fails") + ", sup log(E)/sqrt(log n) = " + num(sup) +
                           " <= " + num(C) + ", E(1e6) = " + num(big.paper_exponent.get_d(), 8) + " < " +
                           num(big.schmidt.get_d(), 8)};
    });

    report(9, "galois exponent bookkeeping", [] {
        using bounds::GaloisStep;
        const auto top = bounds::galois_exponent({{GaloisStep::abelian(2, 2, 6)}});
        const auto z2 = bounds::galois_exponent({{GaloisStep::z2_refined(6)}});
        const auto na = bounds::galois_exponent({{GaloisStep::non_abelian(60, 60, 1)}});
        const double want = 0.25 + 1.0 / (2.0 * std::sqrt(60.0)) + 1.0 / 60.0;
        const bool na_ok = na.lower.get_d() <= want + 1e-12 && na.upper.get_d() >= want - 1e-12 &&
                           Rational(na.upper - na.lower).get_d() <= 1e-6;
        bool all = true;
        std::size_t checked = 0;
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL})
            for (unsigned long e = 1; e <= 10; ++e) {
                if (std::pow(double(p), double(e)) > 10000) break;
                for (unsigned long q = 2; q <= 100; ++q) {
                    const auto s = GaloisStep::abelian(p, e, q);
                    const bool excluded = bounds::excluded_abelian_case(s.h, q);
                    if (excluded) continue;
                    ++checked;
                    all = all && bounds::step_exponent(s).at_most_three_eighths;
                }
            }
        for (unsigned long q = 6; q <= 100; ++q) {
            ++checked;
            all = all && bounds::galois_exponent({{GaloisStep::z2_refined(q)}}).at_most_three_eighths;
        }
        for (unsigned long h : {60UL, 120UL, 168UL, 360UL, 504UL, 660UL, 1092UL, 3600UL})
            for (unsigned long q : {1UL, 2UL, 6UL}) {
                const unsigned long h0 = h == 3600 ? 60 : h;
                ++checked;
                all = all && bounds::galois_exponent({{GaloisStep::non_abelian(h, h0, q)}}).at_most_three_eighths;
            }
        all = all && bounds::galois_exponent({{GaloisStep::s3()}}).at_most_three_eighths &&
              bounds::galois_exponent({{GaloisStep::nilpotent_order8()}}).at_most_three_eighths;
        const bool ok = top.certified == Rational(3, 8) && top.at_most_three_eighths &&
                        z2.upper == Rational(17, 48) && na_ok && all;
        return Outcome{ok, "|Q|>=5 step certifies " + top.certified.get_str() + " (layer " + top.upper.get_str() +
                               "), Z/2 refinement " + z2.upper.get_str() + ", |H|=60 in [" + num(na.lower.get_d(), 10) +
                               ", " + num(na.upper.get_d(), 10) + "], " + std::to_string(checked) +
                               " admissible steps <= 3/8: " + (all ? "yes" : "no")};
    });

    report(10, "lattice suite on the cubic pool", [] {
        const auto& res = pool(3);
        bool det_ok = true, mink_ok = true, fd_ok = true;
        std::size_t real = 0;
        for (const auto& L : res.records) {
            if (L.r2 != 0) continue;
            ++real;
            const auto t = lattice::trace_gram(L, lattice::Sublattice::FullOrder);
            const Rational det = algebra::determinant(t.gram);
            det_ok = det_ok && (det == Rational(L.field_disc) || det == -Rational(L.field_disc));
            const auto prof = lattice::successive_minima(t.gram);
            mink_ok = mink_ok && lattice::minkowski_product_bound(prof, det);
            fd_ok = fd_ok && lattice::in_fundamental_domain(lattice::shape_point(L));
        }
        algebra::QMatrix g(2, 2);
        g(0, 0) = 6;
        g(0, 1) = 3;
        g(1, 0) = 3;
        g(1, 1) = 6;
        const auto sp = lattice::shape_point(g);
        const auto mp = lattice::successive_minima(g);
        const bool example = std::abs(sp.x - 0.5) < 1e-12 && std::abs(sp.y - std::sqrt(3.0) / 2) < 1e-12 &&
                             mp.minima[0] == 6 && mp.minima[1] == 6;
        const auto l31 = lattice::lemma31_check(res.records);
        return Outcome{det_ok && mink_ok && fd_ok && example && l31.min_ratio > 0,
                       std::to_string(real) + " totally real cubics: det=+-disc " + (det_ok ? "yes" : "no") +
                           ", Minkowski " + (mink_ok ? "yes" : "no") + ", fundamental domain " + (fd_ok ? "yes" : "no") +
                           "; example shape (" + num(sp.x) + ", " + num(sp.y) + "); first-minimum ratio " +
                           num(l31.min_ratio) + " over " + std::to_string(res.records.size()) + " fields"};
    });

    report(11, "squarefree density experiment", [] {
        const auto t0 = Clock::now();
        const auto f = algebra::MPoly::parse("-4*a^3 - 27*b^2");
        const auto d = bounds::sqfree_density(f, {{-200, 200}, {-200, 200}}, 50);
        const double gap = std::abs(d.empirical_fraction.get_d() - d.truncated_product.get_d());
        const auto x = bounds::sqfree_density(algebra::MPoly::parse("x"), {{1, 100000}}, 100);
        const double six = 6.0 / (std::numbers::pi * std::numbers::pi);
        const double gx = std::abs(x.empirical_fraction.get_d() - six);
        const double t = elapsed(t0);
        return Outcome{gap <= 0.02 && gx <= 0.005 && t <= 300,
                       "disc: empirical " + num(d.empirical_fraction.get_d()) + " vs product " +
                           num(d.truncated_product.get_d()) + " (gap " + num(gap, 3) + "); x: " +
                           num(x.empirical_fraction.get_d(), 6) + " vs 6/pi^2 (gap " + num(gx, 3) + ")"};
    });

    report(12, "determinism of every CLI command across reruns and thread counts", [] {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "fieldcount_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string cli = FIELDCOUNT_CLI_PATH;
        struct Cmd {
            std::string name, args, output;
        };
        auto run = [&](const std::string& tag, int threads) {
            const fs::path d = dir / tag;
            fs::create_directories(d);
            const std::string D = d.string();
            const std::vector<Cmd> cmds{
                {"enumerate", "enumerate --degree 3 --disc-bound 5000 --cache " + D + "/c3.jsonl", D + "/c3.jsonl"},
                {"enumerate-sn", "enumerate --degree 4 --disc-bound 3000 --sn-only --cache " + D + "/c4.jsonl",
                 D + "/c4.jsonl"},
                {"count", "count --degree 3 --disc-bound 20000 --filter galois --grid-ratio 1.5 --out " + D + "/count.csv",
                 D + "/count.csv"},
                {"fingerprint", "fingerprint --cache " + D + "/c3.jsonl --out " + D + "/fp.jsonl", D + "/fp.jsonl"},
                {"shape", "shape --cache " + D + "/c4.jsonl --out " + D + "/shape.csv", D + "/shape.csv"},
                {"exponents", "exponents --n-list 3,4,...,20000 --optimize --out " + D + "/exp.csv", D + "/exp.csv"},
                {"sqfree-density",
                 "sqfree-density --poly '-4*a^3-27*b^2' --box a=-60..60,b=-60..60 --pmax 30 --out " + D + "/d.json",
                 D + "/d.json"},
            };
            std::map<std::string, std::string> out;
            for (const auto& c : cmds) {
                const std::string line = "OMP_NUM_THREADS=" + std::to_string(threads) + " '" + cli + "' " + c.args +
                                         " > " + D + "/" + c.name + ".stdout 2>/dev/null";
                const int rc = std::system(line.c_str());
                out[c.name] = "rc=" + std::to_string(rc) + "\n" + slurp(c.output);
            }
            const std::string st = "OMP_NUM_THREADS=" + std::to_string(threads) + " '" + cli + "' selftest > " + D +
                                   "/selftest.stdout 2>/dev/null";
            out["selftest"] = "rc=" + std::to_string(std::system(st.c_str())) + "\n" + slurp(D + "/selftest.stdout");
            return out;
        };
        const auto a = run("a", 1);
        const auto b = run("b", 1);
        const auto c = run("c", 4);
        std::string differing;
        bool nonzero = false;
        for (const auto& [k, v] : a) {
            if (v != b.at(k) || v != c.at(k)) differing += k + " ";
            if (v.rfind("rc=0\n", 0) != 0) nonzero = true;
        }
        fs::remove_all(dir);
        return Outcome{differing.empty() && !nonzero,
                       std::to_string(a.size()) + " commands, 1/1/4 threads: " +
                           (differing.empty() ? std::string("byte-identical") : "differ: " + differing) +
                           (nonzero ? ", some command failed" : "")};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
