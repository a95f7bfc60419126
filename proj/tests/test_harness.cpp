#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "fieldcount/harness/cache.hpp"
#include "fieldcount/harness/count.hpp"
#include "fieldcount/harness/reports.hpp"

using namespace fieldcount;
using namespace fieldcount::harness;

namespace {

std::string temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "fieldcount_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

}  // namespace

TEST_CASE("harness: count series examples") {
    auto q = count_series(2, Integer(21), 21.0, CountFilter::Any);
    REQUIRE(q.points.size() == 1);
    CHECK(q.points[0].X == 21);
    CHECK(q.points[0].count == 13);
    auto c = count_series(3, Integer(24), std::pow(10.0, 0.25), CountFilter::Any);
    CHECK(c.points.back().X == 24);
    CHECK(c.points.back().count == 1);
    auto g = count_series(3, Integer(24), std::pow(10.0, 0.25), CountFilter::GaloisOnly);
    CHECK(g.points.back().count == 0);
    CHECK_THROWS_AS(count_series(3, Integer(24), 1.0, CountFilter::Any), DomainError);
    CHECK_THROWS_AS(parse_filter("abelian"), DomainError);
    CHECK(parse_filter("sn") == CountFilter::SnOnly);
}

TEST_CASE("harness: grid and filter invariants") {
    const auto grid = geometric_grid(Integer(5000), 2.0);
    CHECK(grid.front() >= 2);
    CHECK(grid.back() == 5000);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i - 1] < grid[i]);
    const auto res = fields::enumerate_fields(3, Integer(5000));
    const auto any = bin_records(3, res.records, grid, CountFilter::Any);
    const auto sn = bin_records(3, res.records, grid, CountFilter::SnOnly);
    const auto gal = bin_records(3, res.records, grid, CountFilter::GaloisOnly);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(any.points[i].count >= sn.points[i].count);
        CHECK(any.points[i].count >= gal.points[i].count);
        // Cubics: S3 + other (the A3 fields here) + undetermined = all.
        CHECK(sn.points[i].count + gal.points[i].count + sn.points[i].undetermined == any.points[i].count);
        if (i > 0) CHECK(any.points[i].count >= any.points[i - 1].count);
    }
    CHECK(gal.points.back().count == gal.points.back().heuristic);
    CHECK(gal.points.back().count > 0);  // 49, 81, 163, ... are cyclic
}

TEST_CASE("harness: slope fit") {
    std::vector<double> xs, lin, root, flat;
    for (int k = 0; k <= 16; ++k) {
        const double x = std::pow(10.0, 2.0 + k * 0.25);
        xs.push_back(x);
        lin.push_back(x);
        root.push_back(std::ceil(std::sqrt(x)));
        flat.push_back(7);
    }
    CHECK(slope_fit(xs, lin, 0).slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(slope_fit(xs, root, 0).slope - 0.5) <= 0.02);
    CHECK(std::abs(slope_fit(xs, flat, 0).slope) <= 1e-9);
    CHECK_THROWS_AS(slope_fit(xs, lin, 1e6), DomainError);
    CHECK_THROWS_AS(slope_fit({1, 2, 3}, {0, 0, 1}, 0), DomainError);
}

TEST_CASE("harness: list and box parsing") {
    CHECK(parse_n_list("3,4,...,8") == std::vector<unsigned long>{3, 4, 5, 6, 7, 8});
    CHECK(parse_n_list("10,20,...,45") == std::vector<unsigned long>{10, 20, 30, 40, 45});
    CHECK(parse_n_list("3, 100, 7") == std::vector<unsigned long>{3, 100, 7});
    CHECK(parse_n_list("3,4,...,1000000").size() == 999998);
    CHECK_THROWS_AS(parse_n_list("3,...,9"), DomainError);
    CHECK_THROWS_AS(parse_n_list("x"), DomainError);
    const auto box = parse_box("a=-200..200,b=-5..7");
    REQUIRE(box.size() == 2);
    CHECK(box[0].first == "a");
    CHECK(box[0].second.lo == -200);
    CHECK(box[1].second.hi == 7);
    CHECK_THROWS_AS(parse_box("a=3..1"), DomainError);
    CHECK_THROWS_AS(parse_box("a:1..2"), DomainError);
}

TEST_CASE("harness: cache roundtrip, resume and corruption") {
    std::istringstream empty("");
    CHECK(read_cache(empty).records.empty());

    const std::string path = temp_path("quadratic.jsonl");
    std::filesystem::remove(path);
    auto run = enumerate_with_cache(2, Integer(21), false, path);
    CHECK(run.result.records.size() == 13);
    CHECK_FALSE(run.resumed);
    const std::string bytes = slurp(path);
    auto contents = read_cache_file(path);
    CHECK(contents.complete);
    CHECK(contents.records.size() == 13);
    // Rewrite from parsed contents is byte-identical.
    std::ostringstream re;
    re << header_line(contents.header) << '\n';
    write_completed_stages(re, contents, fields::stage_schedule(2, Integer(21)));
    CHECK(re.str() == bytes);
    // A complete cache is reused without enumeration.
    auto again = enumerate_with_cache(2, Integer(21), false, path);
    CHECK(again.stages_computed == 0);
    CHECK(again.result.records == run.result.records);
    CHECK(slurp(path) == bytes);

    // Cubic cache with several stages: drop the final marker, resume recomputes one stage.
    const std::string cpath = temp_path("cubic.jsonl");
    std::filesystem::remove(cpath);
    auto full = enumerate_with_cache(3, Integer(3000), false, cpath);
    const std::string cbytes = slurp(cpath);
    const int stages = static_cast<int>(fields::stage_schedule(3, Integer(3000)).size());
    CHECK(full.stages_computed == stages);
    std::string cut = cbytes.substr(0, cbytes.size() - 1);
    cut = cut.substr(0, cut.rfind('\n') + 1);
    spit(cpath, cut);
    auto resumed = enumerate_with_cache(3, Integer(3000), false, cpath);
    CHECK(resumed.resumed);
    CHECK(resumed.stages_computed == 1);
    CHECK(resumed.result.records == full.result.records);
    CHECK(slurp(cpath) == cbytes);
    // An unterminated tail is an interrupted write and is dropped.
    spit(cpath, cbytes.substr(0, cbytes.size() - 10));
    auto tail = enumerate_with_cache(3, Integer(3000), false, cpath);
    CHECK(tail.stages_computed == 1);
    CHECK(slurp(cpath) == cbytes);

    // Corruption reports the line number.
    std::string bad = cbytes;
    const auto second = bad.find('\n') + 1;
    bad.replace(second, 10, "{\"type\":\"x");
    spit(cpath, bad);
    try {
        read_cache_file(cpath);
        FAIL("expected corruption");
    } catch (const CacheCorruptionError& e) {
        CHECK(e.line() == 2);
    }
    // A tampered discriminant is caught by the consistency checks.
    std::string tampered = cbytes;
    const auto at = tampered.find("\"field_disc\":\"-23\"");
    REQUIRE(at != std::string::npos);
    tampered.replace(at, 18, "\"field_disc\":\"-31\"");
    spit(cpath, tampered);
    CHECK_THROWS_AS(read_cache_file(cpath), CacheCorruptionError);
    spit(cpath, "{\"type\":\"field\"}\n");
    CHECK_THROWS_AS(read_cache_file(cpath), CacheCorruptionError);
    std::filesystem::remove(cpath);
    std::filesystem::remove(path);
}

TEST_CASE("harness: reports are independent of the thread count") {
    const auto res = fields::enumerate_fields(3, Integer(1500));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto fp1 = fingerprint_jsonl(res.records);
    const auto sh1 = shape_csv(res.records);
    const auto ex1 = exponents_csv(parse_n_list("3,4,...,300"), true);
    omp_set_num_threads(4);
    const auto fp4 = fingerprint_jsonl(res.records);
    const auto sh4 = shape_csv(res.records);
    const auto ex4 = exponents_csv(parse_n_list("3,4,...,300"), true);
    omp_set_num_threads(saved);
    CHECK(fp1 == fp4);
    CHECK(sh1 == sh4);
    CHECK(ex1 == ex4);
    CHECK(fp1.find("\"error\"") == std::string::npos);
    CHECK(ex1.substr(0, 60).find("n,r,c,paper_exponent,schmidt,lower,best_known") == 0);
    CHECK(ex1.find("\n3,1,3,156,5/4,11/18,5/4,") != std::string::npos);
}
