#include "fieldcount/harness/count.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "fieldcount/errors.hpp"

namespace fieldcount::harness {

using fields::GaloisKind;

CountFilter parse_filter(const std::string& text) {
    if (text == "any") return CountFilter::Any;
    if (text == "sn") return CountFilter::SnOnly;
    if (text == "galois") return CountFilter::GaloisOnly;
    throw DomainError("unknown filter '" + text + "' (any|sn|galois)");
}

std::string filter_name(CountFilter f) {
    switch (f) {
        case CountFilter::Any: return "any";
        case CountFilter::SnOnly: return "sn";
        case CountFilter::GaloisOnly: return "galois";
    }
    return "any";
}

std::vector<Integer> geometric_grid(const Integer& x_max, double ratio, const Integer& x_min) {
    if (x_max < 1) throw DomainError("X_max must be >= 1");
    if (!(ratio > 1.0) || !std::isfinite(ratio)) throw DomainError("grid ratio must be > 1");
    std::vector<Integer> out{x_max};
    const long double top = x_max.get_d();
    for (int k = 1;; ++k) {
        const long double v = top / std::pow(static_cast<long double>(ratio), k);
        if (v < x_min.get_d()) break;
        Integer x(static_cast<double>(std::floor(v)));
        if (x < x_min) break;
        if (x < out.back()) out.push_back(x);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

CountSeries bin_records(int n, const std::vector<FieldRecord>& records, const std::vector<Integer>& grid,
                        CountFilter filter) {
    CountSeries s;
    s.degree = n;
    s.filter = filter;
    struct Item {
        Integer d;
        int count, undetermined, heuristic;
    };
    std::vector<Item> items;
    for (const auto& r : records) {
        Item it{abs(r.field_disc), 0, 0, 0};
        switch (filter) {
            case CountFilter::Any: it.count = 1; break;
            case CountFilter::SnOnly:
                if (r.galois.kind == GaloisKind::SnCertified) it.count = 1;
                else if (r.galois.kind == GaloisKind::Undetermined) it.undetermined = 1;
                break;
            case CountFilter::GaloisOnly:
                if (r.galois.is_galois(n)) {
                    it.count = 1;
                    it.heuristic = r.galois.heuristic() ? 1 : 0;
                } else if (r.galois.kind == GaloisKind::Undetermined) {
                    it.undetermined = 1;
                }
                break;
        }
        items.push_back(std::move(it));
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.d < b.d; });
    std::size_t i = 0;
    CountPoint acc;
    for (const auto& X : grid) {
        while (i < items.size() && items[i].d < X) {
            acc.count += items[i].count;
            acc.undetermined += items[i].undetermined;
            acc.heuristic += items[i].heuristic;
            ++i;
        }
        acc.X = X;
        s.points.push_back(acc);
    }
    return s;
}

CountSeries count_series(int n, const Integer& x_max, double grid_ratio, CountFilter filter,
                         const fields::EnumerationOptions& base) {
    const auto grid = geometric_grid(x_max, grid_ratio);
    const auto t0 = std::chrono::steady_clock::now();
    fields::EnumerationOptions opt = base;
    opt.filter = fields::FieldFilter::Any;  // labels are filtered while binning
    const auto res = fields::enumerate_fields(n, x_max, opt);
    CountSeries s = bin_records(n, res.records, grid, filter);
    s.metadata = res.metadata;
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

SlopeFit slope_fit(const std::vector<double>& xs, const std::vector<double>& counts, double x_min) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] >= x_min && counts[i] > 0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(counts[i]));
        }
    if (lx.size() < 3) throw DomainError("slope fit needs at least 3 points with positive count");
    const double m = static_cast<double>(lx.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sx += lx[i], sy += ly[i];
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0) throw DomainError("slope fit needs distinct X values");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (f.intercept + f.slope * lx[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / m);
    f.points = lx.size();
    return f;
}

SlopeFit slope_fit(const CountSeries& series, const Integer& x_min) {
    std::vector<double> xs, cs;
    for (const auto& p : series.points) {
        xs.push_back(p.X.get_d());
        cs.push_back(static_cast<double>(p.count));
    }
    return slope_fit(xs, cs, x_min.get_d());
}

std::string series_csv(const CountSeries& s) {
    std::ostringstream os;
    os << "X,count,undetermined,heuristic\n";
    for (const auto& p : s.points)
        os << p.X.get_str() << ',' << p.count << ',' << p.undetermined << ',' << p.heuristic << '\n';
    return os.str();
}

}  // namespace fieldcount::harness
