#include "fieldcount/fingerprint/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fieldcount/bounds/exponents.hpp"
#include "fieldcount/fields/embeddings.hpp"
#include "fieldcount/lattice/shape.hpp"

namespace fieldcount::fingerprint {

using fields::mulmod;

unsigned ExponentVector::degree() const {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
}

ExponentVector ExponentVector::unit(std::size_t r, std::size_t k) {
    if (k >= r) throw DomainError("unit vector index out of range");
    ExponentVector v = zero(r);
    v.e[k] = 1;
    return v;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    if (a.arity() != b.arity()) throw DomainError("exponent vectors of different arity");
    ExponentVector s = a;
    for (std::size_t i = 0; i < s.e.size(); ++i) s.e[i] += b.e[i];
    return s;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return b.e[i] <=> a.e[i];
    return std::strong_ordering::equal;
}

std::vector<ExponentVector> exponents_up_to(std::size_t r, unsigned d) {
    if (r == 0) throw DomainError("arity must be positive");
    std::vector<ExponentVector> out;
    ExponentVector cur = ExponentVector::zero(r);
    // Compositions with remaining budget, filled left to right.
    auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
        if (k + 1 == r) {
            for (unsigned v = 0; v <= left; ++v) {
                cur.e[k] = v;
                out.push_back(cur);
            }
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur.e[k] = v;
            self(self, k + 1, left - v);
        }
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

SigmaSet SigmaSet::make(std::size_t r, unsigned c) {
    if (r < 1 || c < 1) throw DomainError("sigma set needs r, c >= 1");
    SigmaSet s;
    s.r = r;
    s.c = c;
    s.sigma0 = exponents_up_to(r, c);
    s.sigma1 = exponents_up_to(r, 2 * c);
    s.sigma = exponents_up_to(r, 4 * c);
    return s;
}

bool SigmaSet::inclusions_hold() const {
    const std::set<ExponentVector> s1(sigma1.begin(), sigma1.end()), s(sigma.begin(), sigma.end());
    for (const auto& a : sigma0)
        for (const auto& b : sigma0)
            if (!s1.count(a + b)) return false;
    for (const auto& a : sigma1) {
        for (const auto& b : sigma1)
            if (!s.count(a + b)) return false;
        for (std::size_t k = 0; k < r; ++k)
            if (!s.count(a + ExponentVector::unit(r, k))) return false;
    }
    return true;
}

SigmaSet sigma_sets_paper(unsigned long n) {
    const auto p = bounds::paper_parameters(n);
    if (!bounds::check_chain(n, p).all())
        throw InternalConsistencyError("default (r, c) chain fails for n = " + std::to_string(n));
    return SigmaSet::make(p.r, static_cast<unsigned>(p.c));
}

namespace {

QPoly power_mod(QPoly b, unsigned e, const algebra::ZPoly& f) {
    QPoly r = QPoly::constant(Rational(1));
    while (e) {
        if (e & 1) r = mulmod(r, b, f);
        e >>= 1;
        if (e) b = mulmod(b, b, f);
    }
    return r;
}

std::vector<Rational> coords(const QPoly& a, int n) {
    std::vector<Rational> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a.coeff(static_cast<std::size_t>(i));
    return v;
}

std::size_t rank_of(const std::vector<QPoly>& elems, int n) {
    if (elems.empty()) return 0;
    QMatrix m(elems.size(), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < elems.size(); ++i) m.set_row(i, coords(elems[i], n));
    return algebra::rank(m);
}

// Incremental chi values: products reuse powers of each alpha_k.
struct ChiTable {
    std::vector<std::vector<QPoly>> powers;  // powers[k][i] = alpha_k^i
    const algebra::ZPoly* f = nullptr;

    ChiTable(const std::vector<QPoly>& tuple, unsigned max_deg, const algebra::ZPoly& fz) : f(&fz) {
        for (const auto& a : tuple) {
            std::vector<QPoly> p{QPoly::constant(Rational(1))};
            for (unsigned i = 1; i <= max_deg; ++i) p.push_back(mulmod(p.back(), a, fz));
            powers.push_back(std::move(p));
        }
    }
    QPoly operator()(const ExponentVector& s) const {
        QPoly r = QPoly::constant(Rational(1));
        for (std::size_t k = 0; k < s.e.size(); ++k)
            if (s.e[k]) r = mulmod(r, powers[k][s.e[k]], *f);
        return r;
    }
};

unsigned max_degree(const std::vector<ExponentVector>& v) {
    unsigned d = 0;
    for (const auto& s : v) d = std::max(d, s.degree());
    return d;
}

Integer integral_trace(const QPoly& a, const std::vector<Integer>& sums) {
    const Rational t = fields::trace(a, sums);
    if (t.get_den() != 1) throw InternalConsistencyError("non-integral trace of an order element");
    return t.get_num();
}

}  // namespace

QPoly chi(const ExponentVector& s, const std::vector<QPoly>& tuple, const MonicIntPoly& f) {
    if (s.arity() != tuple.size()) throw DomainError("exponent arity does not match tuple length");
    const auto fz = f.to_zpoly();
    QPoly r = QPoly::constant(Rational(1));
    for (std::size_t k = 0; k < tuple.size(); ++k)
        if (s.e[k]) r = mulmod(r, power_mod(tuple[k] % algebra::to_qpoly(fz), s.e[k], fz), fz);
    return r;
}

Integer f_sigma(const ExponentVector& s, const std::vector<QPoly>& tuple, const MonicIntPoly& f) {
    return integral_trace(chi(s, tuple, f), fields::power_sums(f, f.degree()));
}

Rational f_sigma_points(const ExponentVector& s, const std::vector<std::vector<Rational>>& points) {
    Rational total = 0;
    for (const auto& x : points) {
        if (x.size() != s.arity()) throw DomainError("point arity does not match exponent");
        Rational term = 1;
        for (std::size_t k = 0; k < x.size(); ++k)
            for (unsigned i = 0; i < s.e[k]; ++i) term *= x[k];
        total += term;
    }
    return total;
}

Independence independence_test(const std::vector<QPoly>& tuple, const std::vector<ExponentVector>& sigma0,
                               const MonicIntPoly& f) {
    if (sigma0.size() > static_cast<std::size_t>(f.degree()))
        throw DomainError("independence test needs |Sigma0| <= n");
    std::vector<QPoly> v;
    for (const auto& s : sigma0) v.push_back(chi(s, tuple, f));
    Independence out;
    out.rank = rank_of(v, f.degree());
    out.independent = out.rank == sigma0.size();
    return out;
}

std::vector<Integer> small_nonvanishing_point(const MPoly& D) {
    if (D.is_zero()) throw DomainError("polynomial is identically zero");
    const unsigned d = D.total_degree();
    const long B = static_cast<long>((d + 2) / 2);  // ceil((d+1)/2)
    const std::size_t m = D.vars().size();
    std::vector<Integer> a(m, 0);
    MPoly cur = D;
    for (std::size_t i = 0; i < m; ++i) {
        bool placed = false;
        // 0, 1, -1, 2, -2, ...: at most d values kill a nonzero polynomial in x_i.
        for (long t = 0; t <= 2 * B && !placed; ++t) {
            const long v = (t % 2 == 1) ? (t + 1) / 2 : -(t / 2);
            MPoly next = cur.substitute(i, Integer(v));
            if (!next.is_zero()) {
                a[i] = v;
                cur = std::move(next);
                placed = true;
            }
        }
        if (!placed) throw InternalConsistencyError("no nonvanishing value within the box");
    }
    if (D.eval(a) == 0) throw InternalConsistencyError("nonvanishing point evaluates to zero");
    return a;
}

OrderTuple construct_tuple(const FieldRecord& field, const SigmaSet& S, unsigned h_max) {
    const int n = field.degree();
    if (n < 3) throw DomainError("tuple construction needs n >= 3");
    if (S.sigma0.size() * 2 <= static_cast<std::size_t>(n)) throw DomainError("sigma set too small for this degree");
    const auto fz = field.min_poly.to_zpoly();
    const QMatrix W = field.order_basis.rows() == static_cast<std::size_t>(n)
                          ? field.order_basis
                          : fields::maximal_order(field.min_poly).basis();
    const std::size_t m = std::min(S.sigma0.size(), static_cast<std::size_t>(n / 2 + 1));
    const std::size_t r = S.r;

    FieldRecord rec = field;
    rec.order_basis = W;
    const auto minima = lattice::t2_minima(rec);
    OrderTuple out;
    out.field = rec;
    out.gamma.assign(minima.witnesses.begin(), minima.witnesses.begin() + static_cast<std::ptrdiff_t>(m));

    const std::vector<ExponentVector> sig0(S.sigma0.begin(), S.sigma0.begin() + static_cast<std::ptrdiff_t>(m));
    const unsigned d1 = max_degree(S.sigma1);
    const auto emb = fields::embed_basis(field.min_poly, W);

    // Element with order coordinates y.
    auto element = [&](const std::vector<long long>& y) {
        std::vector<Rational> v(static_cast<std::size_t>(n), 0);
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0)
                for (std::size_t l = 0; l < v.size(); ++l) v[l] += Rational(static_cast<long>(y[j])) * W(j, l);
        return QPoly(v);
    };

    std::vector<long> coeff(m * r, 0);
    std::size_t tried = 0;
    for (unsigned H = 1; H <= h_max; H *= 2) {
        // Odometer over [-H, H]^{mr} with digit order 0, 1, -1, 2, -2, ...
        std::vector<unsigned> digit(m * r, 0);
        auto value = [](unsigned t) { return t % 2 == 1 ? static_cast<long>((t + 1) / 2) : -static_cast<long>(t / 2); };
        const unsigned radix = 2 * H + 1;
        while (true) {
            bool fresh = false;  // skip vectors already examined with H/2
            for (std::size_t i = 0; i < digit.size(); ++i) {
                coeff[i] = value(digit[i]);
                if (static_cast<unsigned long>(std::labs(coeff[i])) > H / 2) fresh = true;
            }
            if (fresh || H == 1) {
                ++tried;
                std::vector<QPoly> alphas;
                std::vector<std::vector<long long>> ycoords;
                for (std::size_t k = 0; k < r; ++k) {
                    std::vector<long long> y(static_cast<std::size_t>(n), 0);
                    for (std::size_t j = 0; j < m; ++j)
                        for (std::size_t l = 0; l < y.size(); ++l)
                            y[l] += coeff[k * m + j] * out.gamma[j][l].get_si();
                    ycoords.push_back(y);
                    alphas.push_back(element(y));
                }
                const ChiTable table(alphas, d1, fz);
                std::vector<QPoly> v0;
                for (const auto& s : sig0) v0.push_back(table(s));
                const std::size_t r0 = rank_of(v0, n);
                if (r0 == m) {
                    std::vector<QPoly> v1;
                    for (const auto& s : S.sigma1) v1.push_back(table(s));
                    const std::size_t r1 = rank_of(v1, n);
                    if (r1 == static_cast<std::size_t>(n)) {
                        out.elements = alphas;
                        out.coefficients.assign(r, std::vector<long>(m));
                        for (std::size_t k = 0; k < r; ++k)
                            for (std::size_t j = 0; j < m; ++j) out.coefficients[k][j] = coeff[k * m + j];
                        auto& cert = out.certificate;
                        cert.m = m;
                        cert.rank_sigma0 = r0;
                        cert.rank_sigma1 = r1;
                        cert.height = H;
                        cert.tried = tried;
                        for (const auto& y : ycoords) {
                            long double t2 = 0;
                            for (auto c : emb.real_vector(y)) t2 += c * c;
                            cert.max_t2 = std::max(cert.max_t2, static_cast<double>(t2));
                        }
                        const double disc = std::fabs(field.field_disc.get_d());
                        cert.constant = cert.max_t2 / std::pow(disc, 2.0 / (n - 2));
                        cert.certified = true;
                        return out;
                    }
                }
            }
            std::size_t pos = digit.size();
            while (pos > 0) {
                --pos;
                if (++digit[pos] < radix) break;
                digit[pos] = 0;
                if (pos == 0) {
                    pos = digit.size() + 1;
                    break;
                }
            }
            if (pos == digit.size() + 1) break;
        }
    }
    throw TupleSearchFailure("no certified tuple with coefficients up to H = " + std::to_string(h_max) +
                             " for " + field.min_poly.to_string());
}

const Integer& Fingerprint::at(const ExponentVector& s) const {
    const auto it = std::lower_bound(sigma.begin(), sigma.end(), s);
    if (it == sigma.end() || !(*it == s)) throw DomainError("exponent vector not in fingerprint");
    return values[static_cast<std::size_t>(it - sigma.begin())];
}

bool Fingerprint::has(const ExponentVector& s) const { return std::binary_search(sigma.begin(), sigma.end(), s); }

Fingerprint fingerprint_field(const OrderTuple& tuple, const SigmaSet& S) {
    if (!tuple.certificate.certified) throw DomainError("tuple has no spanning certificate");
    if (tuple.elements.size() != S.r) throw DomainError("tuple length does not match the sigma set");
    const auto& f = tuple.field.min_poly;
    const auto fz = f.to_zpoly();
    const auto sums = fields::power_sums(f, f.degree());
    const ChiTable table(tuple.elements, max_degree(S.sigma), fz);
    Fingerprint fp;
    fp.r = S.r;
    fp.c = S.c;
    fp.sigma = S.sigma;
    fp.values.resize(S.sigma.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < S.sigma.size(); ++i) fp.values[i] = integral_trace(table(S.sigma[i]), sums);
    return fp;
}

Reconstruction reconstruct(const Fingerprint& fp, const std::vector<ExponentVector>& cands) {
    if (fp.sigma.empty() || fp.sigma.front() != ExponentVector::zero(fp.r))
        throw DomainError("fingerprint lacks the zero exponent");
    const Integer& n_val = fp.values.front();
    if (n_val < 1 || !n_val.fits_uint_p()) throw DomainError("fingerprint value at zero is not a degree");
    const std::size_t n = n_val.get_ui();
    const std::size_t r = fp.r;
    for (const auto& a : cands)
        for (const auto& b : cands)
            if (!fp.has(a + b)) throw DomainError("base candidates need all pairwise sums in the fingerprint");

    Reconstruction rec;
    rec.n = n;
    // Greedy: keep a candidate when its Gram row raises the rank.
    QMatrix rows(0, cands.size());
    std::vector<std::vector<Rational>> kept;
    for (const auto& a : cands) {
        if (rec.base.size() == n) break;
        std::vector<Rational> row;
        for (const auto& b : cands) row.push_back(Rational(fp.at(a + b)));
        kept.push_back(row);
        QMatrix m(kept.size(), cands.size());
        for (std::size_t i = 0; i < kept.size(); ++i) m.set_row(i, kept[i]);
        if (algebra::rank(m) == kept.size()) rec.base.push_back(a);
        else kept.pop_back();
    }
    if (rec.base.size() < n) throw DomainError("tuple not Sigma-spanning: Gram rank below n");
    rec.gram = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rec.gram(i, j) = Rational(fp.at(rec.base[i] + rec.base[j]));
    if (algebra::determinant(rec.gram) == 0) throw DomainError("tuple not Sigma-spanning: singular Gram matrix");
    const QMatrix ginv = algebra::inverse(rec.gram);
    for (std::size_t k = 0; k < r; ++k) {
        const auto ek = ExponentVector::unit(r, k);
        QMatrix T(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto s = rec.base[i] + rec.base[j] + ek;
                if (!fp.has(s)) throw DomainError("fingerprint too short for the multiplication matrices");
                T(i, j) = Rational(fp.at(s));
            }
        rec.mult.push_back(ginv * T);
        rec.charpolys.push_back(algebra::charpoly(rec.mult.back()));
    }
    return rec;
}

Reconstruction reconstruct(const Fingerprint& fp) {
    const unsigned top = max_degree(fp.sigma);
    std::vector<ExponentVector> cands;
    for (const auto& s : fp.sigma)
        if (2 * s.degree() + 1 <= top) cands.push_back(s);
    return reconstruct(fp, cands);
}

bool matrices_commute(const Reconstruction& rec) {
    for (std::size_t j = 0; j < rec.mult.size(); ++j)
        for (std::size_t k = j + 1; k < rec.mult.size(); ++k)
            if (!(rec.mult[j] * rec.mult[k] == rec.mult[k] * rec.mult[j])) return false;
    return true;
}

bool roundtrip(const Reconstruction& rec, const Fingerprint& fp) {
    const std::size_t r = rec.mult.size();
    if (r != fp.r) return false;
    const unsigned top = max_degree(fp.sigma);
    std::vector<std::vector<QMatrix>> pw(r);
    for (std::size_t k = 0; k < r; ++k) {
        pw[k].push_back(QMatrix::identity(rec.n));
        for (unsigned i = 1; i <= top; ++i) pw[k].push_back(pw[k].back() * rec.mult[k]);
    }
    for (std::size_t idx = 0; idx < fp.sigma.size(); ++idx) {
        const auto& s = fp.sigma[idx];
        QMatrix m = pw[0][s.e[0]];
        for (std::size_t k = 1; k < r; ++k)
            if (s.e[k]) m = m * pw[k][s.e[k]];
        Rational tr = 0;
        for (std::size_t i = 0; i < rec.n; ++i) tr += m(i, i);
        if (tr != Rational(fp.values[idx])) return false;
    }
    return true;
}

std::vector<std::size_t> parse_permutation(std::string_view text, std::size_t n) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = i;
    std::vector<bool> seen(n, false);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    skip();
    while (pos < text.size()) {
        if (text[pos] != '(') throw DomainError("permutation: expected '('");
        ++pos;
        std::vector<std::size_t> cyc;
        while (true) {
            skip();
            std::size_t v = 0;
            const std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') v = v * 10 + static_cast<std::size_t>(text[pos++] - '0');
            if (pos == start || v < 1 || v > n) throw DomainError("permutation: bad point");
            if (seen[v - 1]) throw DomainError("permutation: repeated point");
            seen[v - 1] = true;
            cyc.push_back(v - 1);
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                break;
            }
            throw DomainError("permutation: unterminated cycle");
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
        skip();
    }
    return img;
}

bool check_invariance(const MPoly& P, const std::vector<std::vector<std::size_t>>& gens) {
    for (const auto& g : gens)
        if (!(P.permute(g) == P)) return false;
    return true;
}

MPoly f6() {
    return MPoly::parse(
        "x1*x2*(x3+x4) + x1*x3*x5 + x1*x4*x6 + x1*x5*x6 + x2*x3*x6 + x2*x4*x5 + x2*x5*x6 + x3*x4*(x5+x6)",
        {"x1", "x2", "x3", "x4", "x5", "x6"});
}

}  // namespace fieldcount::fingerprint
