#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fieldcount/bounds/sqfree.hpp"
#include "fieldcount/errors.hpp"
#include "fieldcount/harness/cache.hpp"
#include "fieldcount/harness/count.hpp"
#include "fieldcount/harness/reports.hpp"
#include "fieldcount/harness/selftest.hpp"

using namespace fieldcount;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitCache = 3;

algebra::Integer parse_bound(const std::string& s) {
    // Accepts integers and forms like 3e5 / 1e+06.
    algebra::Integer x;
    if (x.set_str(s, 10) == 0) return x;
    std::size_t used = 0;
    double d = 0;
    try {
        d = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("bad discriminant bound '" + s + "'");
    }
    if (used != s.size() || !(d >= 1) || d != std::floor(d) || d > 1e18)
        throw DomainError("bad discriminant bound '" + s + "'");
    return algebra::Integer(d);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting number fields: enumeration, fingerprints, lattice shapes and exponent bookkeeping"};
    app.require_subcommand(1);

    int degree = 0;
    std::string disc_bound, cache, out, filter = "any", n_list, poly, box;
    bool sn_only = false, optimize = false;
    double grid_ratio = std::pow(10.0, 0.25);
    unsigned pmax = 50;

    auto* en = app.add_subcommand("enumerate", "Enumerate fields into a resumable cache");
    en->add_option("--degree", degree)->required();
    en->add_option("--disc-bound", disc_bound)->required();
    en->add_flag("--sn-only", sn_only);
    en->add_option("--cache", cache)->required();

    auto* co = app.add_subcommand("count", "Counting function on a geometric grid, with a slope fit");
    co->add_option("--degree", degree)->required();
    co->add_option("--disc-bound", disc_bound)->required();
    co->add_option("--filter", filter)->check(CLI::IsMember({"any", "sn", "galois"}));
    co->add_option("--grid-ratio", grid_ratio);
    co->add_option("--out", out)->required();

    auto* fp = app.add_subcommand("fingerprint", "Fingerprints of the cached fields (JSON lines)");
    fp->add_option("--cache", cache)->required();
    fp->add_option("--out", out)->required();

    auto* sh = app.add_subcommand("shape", "Minima, s(L) and shape points of the cached fields");
    sh->add_option("--cache", cache)->required();
    sh->add_option("--out", out)->required();

    auto* ex = app.add_subcommand("exponents", "Exponent table");
    ex->add_option("--n-list", n_list)->required();
    ex->add_flag("--optimize", optimize);
    ex->add_option("--out", out)->required();

    auto* sq = app.add_subcommand("sqfree-density", "Squarefree values of a polynomial on a box");
    sq->add_option("--poly", poly)->required();
    sq->add_option("--box", box)->required();
    sq->add_option("--pmax", pmax);
    sq->add_option("--out", out)->required();

    auto* st = app.add_subcommand("selftest", "Lemma-level property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    try {
        const std::uint64_t seed = harness::seed_from_env();
        if (*en) {
            const auto X = parse_bound(disc_bound);
            const auto run = harness::enumerate_with_cache(degree, X, sn_only, cache);
            long long sn = 0, und = 0;
            for (const auto& r : run.result.records) {
                sn += r.galois.kind == fields::GaloisKind::SnCertified;
                und += r.galois.kind == fields::GaloisKind::Undetermined;
            }
            std::cout << "degree " << degree << ", |disc| < " << X.get_str() << ": " << run.result.records.size()
                      << " fields (" << sn << " certified S_n, " << und << " undetermined); stages computed "
                      << run.stages_computed << (run.resumed ? " (resumed)" : "") << '\n';
            if (!run.result.metadata.complete) std::cout << "note: " << run.result.metadata.completeness_note << '\n';
        } else if (*co) {
            const auto X = parse_bound(disc_bound);
            const auto series = harness::count_series(degree, X, grid_ratio, harness::parse_filter(filter));
            write_file(out, harness::series_csv(series));
            const auto& md = series.metadata;
            std::cerr << "stages " << md.stage_bounds.size() << ", hunter bound " << md.hunter_bound
                      << ", candidates " << md.candidates << ", wall " << series.wall_seconds << " s\n";
            if (!md.complete) std::cerr << "note: " << md.completeness_note << '\n';
            try {
                const auto fit = harness::slope_fit(series, algebra::Integer(2));
                std::cout << "slope " << fit.slope << " intercept " << fit.intercept << " residual " << fit.residual
                          << " over " << fit.points << " points\n";
            } catch (const DomainError& e) {
                std::cout << "slope unavailable: " << e.what() << '\n';
            }
        } else if (*fp || *sh) {
            const auto contents = harness::read_cache_file(cache);
            if (!contents.complete) std::cerr << "warning: cache is incomplete; reporting completed stages only\n";
            const auto records = harness::cache_report_records(contents);
            write_file(out, *fp ? harness::fingerprint_jsonl(records) : harness::shape_csv(records));
        } else if (*ex) {
            write_file(out, harness::exponents_csv(harness::parse_n_list(n_list), optimize));
        } else if (*sq) {
            const auto parsed = harness::parse_box(box);
            std::vector<std::string> vars;
            std::vector<bounds::Range> ranges;
            for (const auto& [name, r] : parsed) {
                vars.push_back(name);
                ranges.push_back(r);
            }
            const auto f = algebra::MPoly::parse(poly, vars);
            if (f.vars().size() != vars.size()) throw DomainError("polynomial uses variables outside the box");
            write_file(out, harness::density_json(bounds::sqfree_density(f, ranges, pmax)));
        } else if (*st) {
            bool ok = true;
            for (const auto& r : harness::run_selftest(seed)) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")")
                          << '\n';
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const CacheCorruptionError& e) {
        std::cerr << "cache corruption: " << e.what() << '\n';
        return kExitCache;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
