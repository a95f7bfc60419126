#pragma once

#include <string>
#include <vector>

#include "fieldcount/fields/enumerate.hpp"

namespace fieldcount::harness {

using algebra::Integer;
using fields::FieldRecord;

enum class CountFilter { Any, SnOnly, GaloisOnly };
CountFilter parse_filter(const std::string& text);  // any | sn | galois
std::string filter_name(CountFilter f);

struct CountPoint {
    Integer X;
    long long count = 0;         // fields with |disc| < X passing the filter
    long long undetermined = 0;  // fields whose label could not decide the filter
    long long heuristic = 0;     // part of count resting on sampling-based labels
};

struct CountSeries {
    int degree = 0;
    CountFilter filter = CountFilter::Any;
    std::vector<CountPoint> points;  // ascending X
    fields::EnumerationMetadata metadata;
    double wall_seconds = 0;
};

// X_max / ratio^k for k = 0, 1, ... while >= x_min, ascending, deduplicated after flooring.
std::vector<Integer> geometric_grid(const Integer& x_max, double ratio, const Integer& x_min = 2);

// Bins already enumerated records (|disc| < X_max) onto the grid.
CountSeries bin_records(int n, const std::vector<FieldRecord>& records, const std::vector<Integer>& grid,
                        CountFilter filter);

CountSeries count_series(int n, const Integer& x_max, double grid_ratio, CountFilter filter,
                         const fields::EnumerationOptions& base = {});

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // root-mean-square residual in log space
    std::size_t points = 0;
};

// Least squares of log(count) against log(X) over points with X >= x_min and count > 0.
SlopeFit slope_fit(const CountSeries& series, const Integer& x_min);
SlopeFit slope_fit(const std::vector<double>& xs, const std::vector<double>& counts, double x_min);

std::string series_csv(const CountSeries& s);

}  // namespace fieldcount::harness
