#include "fieldcount/harness/reports.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fieldcount/errors.hpp"
#include "fieldcount/lattice/shape.hpp"

namespace fieldcount::harness {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view s, const char* what) {
    s = trim(s);
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw DomainError(std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t q = s.find(sep, pos);
        out.push_back(s.substr(pos, q == std::string_view::npos ? std::string_view::npos : q - pos));
        if (q == std::string_view::npos) break;
        pos = q + 1;
    }
    return out;
}

// Fixed 17-significant-digit formatting keeps reports byte-stable.
std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

std::vector<unsigned long> parse_n_list(std::string_view text) {
    const auto parts = split(text, ',');
    std::vector<unsigned long> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (trim(parts[i]) == "...") {
            if (out.size() < 2 || i + 1 >= parts.size()) throw DomainError("'...' needs two terms before and one after");
            const unsigned long a = out[out.size() - 2], b = out.back();
            if (b <= a) throw DomainError("'...' needs an increasing progression");
            const unsigned long last = parse_number<unsigned long>(parts[i + 1], "n");
            for (unsigned long v = b + (b - a); v <= last; v += b - a) out.push_back(v);
            if (out.back() != last) out.push_back(last);
            ++i;
            continue;
        }
        out.push_back(parse_number<unsigned long>(parts[i], "n"));
    }
    if (out.empty()) throw DomainError("empty n list");
    return out;
}

std::vector<std::pair<std::string, bounds::Range>> parse_box(std::string_view text) {
    std::vector<std::pair<std::string, bounds::Range>> out;
    for (auto part : split(text, ',')) {
        part = trim(part);
        const auto eq = part.find('=');
        const auto dots = part.find("..");
        if (eq == std::string_view::npos || dots == std::string_view::npos || dots < eq)
            throw DomainError("box entries look like name=lo..hi");
        bounds::Range r;
        r.lo = parse_number<std::int64_t>(part.substr(eq + 1, dots - eq - 1), "box bound");
        r.hi = parse_number<std::int64_t>(part.substr(dots + 2), "box bound");
        if (r.hi < r.lo) throw DomainError("empty box range");
        out.emplace_back(std::string(trim(part.substr(0, eq))), r);
    }
    return out;
}

std::string fingerprint_json(const fingerprint::Fingerprint& fp) {
    json j;
    j["r"] = fp.r;
    j["c"] = fp.c;
    json sig = json::array(), vals = json::array();
    for (const auto& s : fp.sigma) sig.push_back(s.e);
    for (const auto& v : fp.values) vals.push_back(v.get_str());
    j["sigma"] = sig;
    j["values"] = vals;
    return j.dump();
}

std::string fingerprint_jsonl(const std::vector<FieldRecord>& records) {
    std::ostringstream os;
    std::vector<std::string> lines(records.size());
    std::vector<std::exception_ptr> errors(records.size());
    // Independent per field; output order is the (sorted) record order.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        json j;
        j["poly"] = r.min_poly.to_string();
        j["field_disc"] = r.field_disc.get_str();
        try {
            if (r.degree() < 3) throw DomainError("fingerprints need degree >= 3");
            const auto S = fingerprint::sigma_sets_paper(static_cast<unsigned long>(r.degree()));
            const auto t = fingerprint::construct_tuple(r, S);
            const auto fp = fingerprint::fingerprint_field(t, S);
            const auto rec = fingerprint::reconstruct(fp);
            json cert;
            cert["height"] = t.certificate.height;
            cert["rank_sigma0"] = t.certificate.rank_sigma0;
            cert["rank_sigma1"] = t.certificate.rank_sigma1;
            cert["max_t2"] = fmt(t.certificate.max_t2);
            cert["roundtrip"] = fingerprint::roundtrip(rec, fp);
            cert["commute"] = fingerprint::matrices_commute(rec);
            json alphas = json::array();
            for (const auto& a : t.elements) {
                json row = json::array();
                for (const auto& c : a.coeffs()) row.push_back(c.get_str());
                alphas.push_back(row);
            }
            j["alpha"] = alphas;
            j["certificate"] = cert;
            j["fingerprint"] = json::parse(fingerprint_json(fp));
        } catch (const DomainError& e) {
            j["error"] = e.what();
        } catch (...) {
            errors[i] = std::current_exception();
        }
        lines[i] = j.dump();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& l : lines) os << l << '\n';
    return os.str();
}

std::string shape_csv(const std::vector<FieldRecord>& records) {
    std::size_t nmax = 0;
    for (const auto& r : records) nmax = std::max(nmax, static_cast<std::size_t>(r.degree()));
    std::ostringstream os;
    os << "poly,field_disc,r1,r2,galois";
    for (std::size_t i = 1; i <= nmax; ++i) os << ",t2_min_" << i;
    os << ",s_squared,s_error,kappa1,kappa2,shape_x,shape_y\n";
    std::vector<std::string> rows(records.size());
    std::vector<std::exception_ptr> errors(records.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < records.size(); ++k) try {
        const auto& r = records[k];
        std::ostringstream row;
        row << '"' << r.min_poly.to_string() << "\"," << r.field_disc.get_str() << ',' << r.r1 << ',' << r.r2 << ','
            << r.galois.to_string();
        const auto m = lattice::t2_minima(r);
        for (std::size_t i = 0; i < nmax; ++i) row << ',' << (i < m.minima.size() ? fmt(m.minima[i]) : "");
        const auto s = lattice::s_of_L(r);
        row << ',' << fmt(s.s_squared) << ',' << fmt(s.error_bound) << ',' << fmt(s.kappa1) << ','
            << (r.degree() >= 3 ? fmt(s.kappa2) : "");
        if (r.degree() == 3 && r.r2 == 0) {
            const auto p = lattice::shape_point(r);
            row << ',' << fmt(p.x) << ',' << fmt(p.y);
        } else {
            row << ",,";
        }
        rows[k] = row.str();
    } catch (...) {
        errors[k] = std::current_exception();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& l : rows) os << l << '\n';
    return os.str();
}

std::string exponents_csv(const std::vector<unsigned long>& ns, bool optimize) {
    std::ostringstream os;
    os << "n,r,c,paper_exponent,schmidt,lower,best_known";
    if (optimize) os << ",opt_r,opt_c,opt_exponent";
    os << '\n';
    std::vector<std::string> rows(ns.size());
    std::vector<std::string> errs(ns.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < ns.size(); ++i) {
        try {
            const auto rep = bounds::exponent_report(ns[i], optimize);
            std::ostringstream row;
            row << rep.n << ',' << rep.paper_rc.r << ',' << rep.paper_rc.c << ',' << rep.paper_exponent.get_str() << ','
                << rep.schmidt.get_str() << ',' << rep.lower.get_str() << ',' << rep.best_known.get_str();
            if (optimize)
                row << ',' << rep.optimum.r << ',' << rep.optimum.c << ',' << rep.optimum.exponent.get_str();
            rows[i] = row.str();
        } catch (const DomainError& e) {
            errs[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (!errs[i].empty()) throw DomainError("n = " + std::to_string(ns[i]) + ": " + errs[i]);
    for (const auto& r : rows) os << r << '\n';
    return os.str();
}

std::string density_json(const bounds::DensityReport& rep) {
    json j;
    j["polynomial"] = rep.polynomial;
    json box = json::object();
    for (std::size_t i = 0; i < rep.box.size(); ++i) box[rep.vars[i]] = {rep.box[i].lo, rep.box[i].hi};
    j["box"] = box;
    j["prime_cutoff"] = rep.prime_cutoff;
    j["points"] = rep.points;
    j["squarefree"] = rep.squarefree;
    j["zeros"] = rep.zeros;
    j["empirical_fraction"] = rep.empirical_fraction.get_str();
    j["empirical_fraction_decimal"] = fmt(rep.empirical_fraction.get_d());
    j["truncated_product"] = rep.truncated_product.get_str();
    j["truncated_product_decimal"] = fmt(rep.truncated_product.get_d());
    json local = json::array();
    for (const auto& l : rep.local) {
        json e;
        e["p"] = l.p;
        e["rho_p2"] = l.rho;
        e["factor"] = l.factor.get_str();
        local.push_back(e);
    }
    j["local_densities"] = local;
    return j.dump(2) + "\n";
}

}  // namespace fieldcount::harness
