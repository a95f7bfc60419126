#include "fieldcount/fields/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "fieldcount/algebra/disc_fast.hpp"
#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/algebra/lattice.hpp"
#include "fieldcount/algebra/roots.hpp"
#include "fieldcount/errors.hpp"
#include "fieldcount/fields/embeddings.hpp"
#include "fieldcount/fields/isomorphism.hpp"

namespace fieldcount::fields {

using algebra::DMatrix;
using algebra::LMatrix;

namespace {

PolyKey key_of(const MonicIntPoly& f) {
    PolyKey k{};
    for (int i = 0; i < f.degree(); ++i) {
        const Integer& c = f.lower()[static_cast<std::size_t>(i)];
        if (!c.fits_slong_p()) throw DomainError("coefficient too large for the enumeration key");
        k[static_cast<std::size_t>(i)] = c.get_si();
    }
    return k;
}

MonicIntPoly poly_of(const PolyKey& k, int n) {
    std::vector<Integer> lower;
    for (int i = 0; i < n; ++i) lower.emplace_back(static_cast<long>(k[static_cast<std::size_t>(i)]));
    return MonicIntPoly(std::move(lower));
}

bool key_less(const std::pair<int, PolyKey>& a, const std::pair<int, PolyKey>& b, int n) {
    if (a.first != b.first) return a.first < b.first;
    return canonical_less(a.second, b.second, n);
}

}  // namespace

bool record_less(const FieldRecord& a, const FieldRecord& b) {
    const int c = cmp(abs(a.field_disc), abs(b.field_disc));
    if (c != 0) return c < 0;
    if (a.field_disc != b.field_disc) return a.field_disc < b.field_disc;
    return a.min_poly < b.min_poly;
}

FieldRecord make_record(const MonicIntPoly& f, int stage, int galois_samples) {
    const Order o = maximal_order(f);
    FieldRecord r;
    r.min_poly = f;
    r.poly_disc = o.poly_disc();
    r.field_disc = o.discriminant();
    r.index = o.index();
    r.r1 = algebra::count_real_roots(f.to_zpoly());
    r.r2 = (f.degree() - r.r1) / 2;
    r.galois = galois_type(f, galois_samples);
    r.stage = stage;
    r.order_basis = o.basis();
    return r;
}

// ---------------------------------------------------------------- sup-norm box

std::vector<Integer> EnumBox::bounds() const {
    if (degree < 1) throw DomainError("box degree must be >= 1");
    if (height < 0) throw DomainError("box height must be >= 0");
    std::vector<Integer> b;
    Rational yp = 1;
    for (int i = 1; i <= degree; ++i) {
        yp *= height;
        b.push_back(algebra::floor_of(Rational(algebra::binomial(static_cast<unsigned long>(degree),
                                                                 static_cast<unsigned long>(i))) *
                                      yp));
    }
    return b;
}

void enumerate_polys(const EnumBox& box, const std::function<void(const MonicIntPoly&)>& visit) {
    const auto b = box.bounds();
    const int n = box.degree;
    std::vector<Integer> lower(static_cast<std::size_t>(n));
    // Canonical order: a_{n-1} outermost ascending, a_0 innermost.
    std::function<void(int)> rec = [&](int i) {
        if (i < 0) {
            visit(MonicIntPoly(lower));
            return;
        }
        const Integer& bound = b[static_cast<std::size_t>(n - i - 1)];
        if (i == n - 1 && box.trace_zero) {
            lower[static_cast<std::size_t>(i)] = 0;
            rec(i - 1);
            return;
        }
        for (Integer v = -bound; v <= bound; ++v) {
            lower[static_cast<std::size_t>(i)] = v;
            rec(i - 1);
        }
    };
    rec(n - 1);
}

// ---------------------------------------------------------------- registry side

std::vector<std::pair<PolyKey, int>> field_generators(const Order& order, int max_stage) {
    const int n = order.degree();
    const auto un = static_cast<std::size_t>(n);
    const MonicIntPoly& f = order.poly();
    using CL = std::complex<long double>;

    const Embeddings emb = embed_basis(f, order.basis());
    const auto& omega = emb.values;
    const auto& E = emb.coords;

    // Unimodular V with rows v_0 (trace g) and v_1..v_{n-1} spanning the trace-zero sublattice.
    const auto tr = order.traces();
    std::vector<std::int64_t> w(un);
    for (std::size_t k = 0; k < un; ++k) w[k] = tr[k].get_si();
    LMatrix V(un, std::vector<std::int64_t>(un, 0));
    for (std::size_t k = 0; k < un; ++k) V[k][k] = 1;
    // Column operations on w mirrored as row operations on V (w = tau . V^T rows).
    for (;;) {
        std::size_t piv = un;
        for (std::size_t k = 0; k < un; ++k)
            if (w[k] != 0 && (piv == un || std::llabs(w[k]) < std::llabs(w[piv]))) piv = k;
        if (piv == un) throw InternalConsistencyError("trace form vanishes");
        bool done = true;
        for (std::size_t k = 0; k < un; ++k) {
            if (k == piv || w[k] == 0) continue;
            const std::int64_t q = w[k] / w[piv];
            w[k] -= q * w[piv];
            for (std::size_t j = 0; j < un; ++j) V[k][j] -= q * V[piv][j];
            if (w[k] != 0) done = false;
        }
        if (done) {
            std::swap(w[0], w[piv]);
            std::swap(V[0], V[piv]);
            if (w[0] < 0) {
                w[0] = -w[0];
                for (auto& x : V[0]) x = -x;
            }
            break;
        }
    }
    const std::int64_t g = w[0];

    auto real_vec = [&](const std::vector<std::int64_t>& x) {
        std::vector<long double> v(un, 0);
        for (std::size_t k = 0; k < un; ++k)
            if (x[k] != 0)
                for (std::size_t c = 0; c < un; ++c) v[c] += static_cast<long double>(x[k]) * E[k][c];
        return v;
    };

    const std::size_t m = un - 1;
    std::vector<std::pair<PolyKey, int>> out;
    const double bound = std::ldexp(1.0, max_stage);

    // Elements of the form x = (t/g) v_0 + sum y_j K_j.
    LMatrix K(m);
    std::vector<std::vector<long double>> KE(m);
    DMatrix G(m, std::vector<double>(m, 0));
    if (m > 0) {
        for (std::size_t j = 0; j < m; ++j) K[j] = V[j + 1];
        for (std::size_t j = 0; j < m; ++j) KE[j] = real_vec(K[j]);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                long double s = 0;
                for (std::size_t c = 0; c < un; ++c) s += KE[a][c] * KE[b][c];
                G[a][b] = static_cast<double>(s);
            }
        const LMatrix L = algebra::lll_gram(G);
        LMatrix K2(m, std::vector<std::int64_t>(un, 0));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (L[a][b] != 0)
                    for (std::size_t j = 0; j < un; ++j) K2[a][j] += L[a][b] * K[b][j];
        K = K2;
        for (std::size_t j = 0; j < m; ++j) KE[j] = real_vec(K[j]);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                long double s = 0;
                for (std::size_t c = 0; c < un; ++c) s += KE[a][c] * KE[b][c];
                G[a][b] = static_cast<double>(s);
            }
    }
    // Inverse of G (small, Gauss-Jordan in long double).
    std::vector<std::vector<long double>> Ginv(m, std::vector<long double>(m, 0));
    if (m > 0) {
        std::vector<std::vector<long double>> A(m, std::vector<long double>(2 * m, 0));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                long double s = 0;
                for (std::size_t c = 0; c < un; ++c) s += KE[a][c] * KE[b][c];
                A[a][b] = s;
            }
            A[a][m + a] = 1;
        }
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < m; ++r)
                if (std::fabs(A[r][c]) > std::fabs(A[p][c])) p = r;
            std::swap(A[c], A[p]);
            const long double d = A[c][c];
            for (auto& x : A[c]) x /= d;
            for (std::size_t r = 0; r < m; ++r)
                if (r != c && A[r][c] != 0) {
                    const long double fct = A[r][c];
                    for (std::size_t j = 0; j < 2 * m; ++j) A[r][j] -= fct * A[c][j];
                }
        }
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) Ginv[a][b] = A[a][m + b];
    }

    const auto v0E = real_vec(V[0]);
    std::vector<std::int64_t> x(un);
    std::vector<CL> sig(un);
    for (std::int64_t t = 0; 2 * t <= n; ++t) {
        if (t % g != 0) continue;
        const std::int64_t q = t / g;
        std::vector<long double> wE(un);
        for (std::size_t c = 0; c < un; ++c) wE[c] = static_cast<long double>(q) * v0E[c];
        // centre c = -w KE^T G^{-1}; Q(y) = (y-c)G(y-c)^T + |w|^2 - c G c^T
        std::vector<long double> wk(m, 0), centre(m, 0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t c = 0; c < un; ++c) wk[a] += wE[c] * KE[a][c];
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t a = 0; a < m; ++a) centre[b] -= wk[a] * Ginv[a][b];
        long double cst = 0;
        for (std::size_t c = 0; c < un; ++c) cst += wE[c] * wE[c];
        for (std::size_t a = 0; a < m; ++a) cst += centre[a] * wk[a];  // -c G c^T = c . wk
        const long double tt = static_cast<long double>(t) * t / n;
        const double ybound = static_cast<double>(tt + bound - cst) + 1e-6 * (1 + bound);
        if (ybound < 0) continue;

        auto handle = [&](const std::vector<std::int64_t>& y) {
            for (std::size_t j = 0; j < un; ++j) x[j] = q * V[0][j];
            for (std::size_t a = 0; a < m; ++a)
                if (y[a] != 0)
                    for (std::size_t j = 0; j < un; ++j) x[j] += y[a] * K[a][j];
            // Embeddings and charpoly prod (X - sigma_i(x)).
            for (std::size_t i = 0; i < un; ++i) {
                CL s = 0;
                for (std::size_t k = 0; k < un; ++k)
                    if (x[k] != 0) s += static_cast<long double>(x[k]) * omega[k][i];
                sig[i] = s;
            }
            std::vector<CL> cp(un + 1, CL(0));
            cp[0] = 1;  // cp[j] = coefficient of X^{deg - j}
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j >= 1; --j) cp[j] -= sig[i] * cp[j - 1];
            PolyKey key{};
            bool ok = true;
            for (std::size_t j = 1; j <= un; ++j) {
                const long double re = cp[j].real();
                const long double r = std::nearbyint(re);
                if (std::fabs(re - r) > 1e-3 || std::fabs(r) > 9e18L) {
                    ok = false;
                    break;
                }
                key[un - j] = static_cast<std::int64_t>(r);
            }
            if (!ok) {
                // Exact fallback.
                std::vector<Integer> xi(un);
                for (std::size_t j = 0; j < un; ++j) xi[j] = static_cast<long>(x[j]);
                const ZPoly cpz = order.charpoly(xi);
                for (std::size_t j = 0; j < un; ++j) {
                    if (!cpz.coeff(j).fits_slong_p()) return true;
                    key[j] = cpz.coeff(j).get_si();
                }
            }
            if (algebra::disc_exact(key.data(), n) == 0) return true;
            const int st = poly_stage(key.data(), n);
            if (st < 0) {
                std::string msg = "root iteration failed in registry:";
                for (int i = 0; i < n; ++i) msg += " " + std::to_string(key[static_cast<std::size_t>(i)]);
                throw InternalConsistencyError(msg);
            }
            if (st <= max_stage) out.emplace_back(key, st);
            return true;
        };
        if (m == 0) {
            handle({});
            continue;
        }
        std::vector<double> cd(m);
        for (std::size_t a = 0; a < m; ++a) cd[a] = static_cast<double>(centre[a]);
        algebra::fincke_pohst_centered(G, cd, ybound, handle);
    }
    std::sort(out.begin(), out.end(), [n](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return canonical_less(a.first, b.first, n);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- sweep kernels

namespace {

struct SweepTask {
    int t;
    std::int64_t outer;
};

std::vector<SweepTask> sweep_tasks(const SweepSpec& spec) {
    std::vector<SweepTask> tasks;
    for (int t = 0; 2 * t <= spec.degree; ++t) {
        const auto [lo, hi] = outer_range(spec.degree, t, spec.bound);
        for (std::int64_t o = lo; o <= hi; ++o) tasks.push_back({t, o});
    }
    return tasks;
}

void sweep_task(const SweepSpec& spec, const Registry& registry, const SweepTask& task, std::vector<Candidate>& out,
                long long& box_count) {
    const int n = spec.degree;
    const bool small_x = spec.disc_bound.fits_ulong_p();
    const std::uint64_t xu = small_x ? spec.disc_bound.get_ui() : 0;
    const std::function<void(const std::int64_t*)> visit = [&](const std::int64_t* a) {
        ++box_count;
        algebra::i128 d;
        if (small_x && algebra::disc_int128(a, n, d)) {
            if (d == 0) return;
            const unsigned __int128 u = d < 0 ? static_cast<unsigned __int128>(-d) : static_cast<unsigned __int128>(d);
            if (!squarefree_kernel_below(u, xu)) return;
        } else {
            const Integer D = algebra::disc_exact(a, n);
            if (D == 0) return;
            if (!squarefree_kernel_below(D, spec.disc_bound)) return;
        }
        const int st = poly_stage(a, n);
        if (st < 0) throw InternalConsistencyError("root iteration failed in sweep");
        if (st != spec.stage) return;
        if (spec.last_stage && centred_t2(a, n) > spec.bound + kStageTolerance) return;
        PolyKey key{};
        std::copy(a, a + n, key.begin());
        if (registry.count(key) != 0) return;
        if (!algebra::is_irreducible(poly_of(key, n).to_zpoly())) return;
        out.push_back({key, st});
    };
    for_each_box_poly(n, task.t, spec.bound, visit, true, task.outer);
}

void sort_candidates(std::vector<Candidate>& c, int n) {
    std::sort(c.begin(), c.end(), [n](const Candidate& a, const Candidate& b) {
        return canonical_less(a.key, b.key, n);
    });
}

}  // namespace

std::vector<Candidate> sweep_stage_serial(const SweepSpec& spec, const Registry& registry, SweepStats* stats) {
    std::vector<Candidate> out;
    long long box = 0;
    for (const auto& task : sweep_tasks(spec)) sweep_task(spec, registry, task, out, box);
    sort_candidates(out, spec.degree);
    if (stats) stats->box_polynomials += box;
    return out;
}

std::vector<Candidate> sweep_stage_parallel(const SweepSpec& spec, const Registry& registry, SweepStats* stats) {
    const auto tasks = sweep_tasks(spec);
    const auto nt = static_cast<long>(tasks.size());
    std::vector<std::vector<Candidate>> per_task(tasks.size());
    long long box = 0;
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : box)
    for (long i = 0; i < nt; ++i) {
        try {
            long long local = 0;
            sweep_task(spec, registry, tasks[static_cast<std::size_t>(i)], per_task[static_cast<std::size_t>(i)],
                       local);
            box += local;
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw InternalConsistencyError(failure);
    std::vector<Candidate> out;
    for (auto& v : per_task) out.insert(out.end(), v.begin(), v.end());
    sort_candidates(out, spec.degree);
    if (stats) stats->box_polynomials += box;
    return out;
}

// ---------------------------------------------------------------- driver

std::vector<double> stage_schedule(int n, const Integer& X) {
    if (n < 2 || n > kMaxHunterDegree) throw DomainError("degree must be in 2..7");
    if (X < 1) throw DomainError("discriminant bound must be >= 1");
    const double cstar = hunter_bound(n, X.get_d());
    std::vector<double> s;
    for (int k = 0;; ++k) {
        const double c = std::ldexp(1.0, k);
        if (c >= cstar) {
            s.push_back(cstar);
            break;
        }
        s.push_back(c);
    }
    return s;
}

namespace {

struct Known {
    FieldRecord record;
    int id;
};

class Enumerator {
  public:
    Enumerator(int n, const Integer& X, const EnumerationOptions& opt) : n_(n), X_(X), opt_(opt) {
        schedule_ = stage_schedule(n, X);
        S_ = static_cast<int>(schedule_.size()) - 1;
    }

    EnumerationResult run() {
        EnumerationResult res;
        auto& md = res.metadata;
        md.degree = n_;
        md.disc_bound = X_;
        md.hunter_bound = schedule_.back();
        md.stage_bounds = schedule_;
        md.complete = n_ != 4;
        md.completeness_note =
            n_ == 4 ? "complete for primitive quartic fields; imprimitive quartics (containing a quadratic subfield) "
                      "are found only when the search region reaches them"
                    : "complete: every field with |disc| < X has a generator in the searched region";

        for (const auto& r : opt_.resume_records) {
            if (r.degree() != n_) throw DomainError("resume record of wrong degree");
            add_field(r, maximal_order(r.min_poly));
        }
        for (int s = opt_.resume_stage + 1; s <= S_; ++s) {
            SweepSpec spec{n_, s, schedule_[static_cast<std::size_t>(s)], X_, s == S_};
            SweepStats st;
            auto cands = opt_.parallel ? sweep_stage_parallel(spec, registry_, &st)
                                       : sweep_stage_serial(spec, registry_, &st);
            md.box_polynomials += st.box_polynomials;
            md.candidates += static_cast<long long>(cands.size());
            std::vector<FieldRecord> fresh;
            for (const auto& c : cands) merge(c, fresh, md);
            std::sort(fresh.begin(), fresh.end(), record_less);
            if (opt_.on_stage_complete) opt_.on_stage_complete(s, fresh);
        }
        for (const auto& k : fields_) res.records.push_back(k.record);
        std::sort(res.records.begin(), res.records.end(), record_less);
        if (opt_.filter == FieldFilter::SnOnly) {
            std::vector<FieldRecord> keep;
            for (auto& r : res.records) {
                if (r.galois.kind == GaloisKind::SnCertified)
                    keep.push_back(std::move(r));
                else if (r.galois.kind == GaloisKind::Undetermined)
                    res.undetermined.push_back(std::move(r));
            }
            res.records = std::move(keep);
        }
        return res;
    }

  private:
    void register_generators(const Order& o, int id, std::vector<std::pair<PolyKey, int>>* gens_out = nullptr) {
        auto gens = field_generators(o, S_);
        for (const auto& g : gens) registry_.emplace(g.first, id);
        if (gens_out) *gens_out = std::move(gens);
    }

    void add_field(const FieldRecord& r, const Order& o) {
        const int id = static_cast<int>(fields_.size());
        fields_.push_back({r, id});
        by_disc_[r.field_disc].push_back(id);
        register_generators(o, id);
        registry_.emplace(key_of(r.min_poly), id);
    }

    void merge(const Candidate& c, std::vector<FieldRecord>& fresh, EnumerationMetadata& md) {
        if (registry_.count(c.key) != 0) return;
        const MonicIntPoly f = poly_of(c.key, n_);
        const Order o = maximal_order(f);
        ++md.orders_computed;
        const Integer disc = o.discriminant();
        if (abs(disc) >= X_) {
            register_generators(o, -1);
            registry_.emplace(c.key, -1);
            return;
        }
        if (auto it = by_disc_.find(disc); it != by_disc_.end()) {
            for (int id : it->second) {
                if (is_isomorphic(f, fields_[static_cast<std::size_t>(id)].record.min_poly)) {
                    ++md.registry_repairs;
                    registry_.emplace(c.key, id);
                    return;
                }
            }
        }
        std::vector<std::pair<PolyKey, int>> gens = field_generators(o, S_);
        bool self = false;
        for (const auto& g : gens) self = self || g.first == c.key;
        if (!self) gens.emplace_back(c.key, c.stage);
        const auto best = *std::min_element(gens.begin(), gens.end(), [this](const auto& a, const auto& b) {
            return key_less({a.second, a.first}, {b.second, b.first}, n_);
        });
        if (best.second < c.stage) ++md.late_discoveries;
        const MonicIntPoly rep = poly_of(best.first, n_);
        FieldRecord r = make_record(rep, best.second, opt_.galois_samples);
        const int id = static_cast<int>(fields_.size());
        fields_.push_back({r, id});
        by_disc_[r.field_disc].push_back(id);
        for (const auto& g : gens) registry_.emplace(g.first, id);
        fresh.push_back(std::move(r));
    }

    int n_;
    Integer X_;
    const EnumerationOptions& opt_;
    std::vector<double> schedule_;
    int S_;
    Registry registry_;
    std::vector<Known> fields_;
    std::map<Integer, std::vector<int>> by_disc_;
};

}  // namespace

EnumerationResult enumerate_fields(int n, const Integer& X, const EnumerationOptions& options) {
    if (n < 2 || n > kMaxHunterDegree) throw DomainError("degree must be in 2..7");
    if (X < 1) throw DomainError("discriminant bound must be >= 1");
    if (options.resume_stage >= 0 && options.resume_stage >= static_cast<int>(stage_schedule(n, X).size()))
        throw DomainError("resume stage beyond the stage schedule");
    Enumerator e(n, X, options);
    return e.run();
}

}  // namespace fieldcount::fields
