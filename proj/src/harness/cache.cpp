#include "fieldcount/harness/cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fieldcount/errors.hpp"

namespace fieldcount::harness {

using json = nlohmann::json;
using algebra::MonicIntPoly;
using algebra::QMatrix;
using algebra::Rational;

namespace {

constexpr const char* kFormat = "fieldcount-cache";

Integer parse_integer(const json& j, std::size_t line, const char* what) {
    if (!j.is_string()) throw CacheCorruptionError(line, std::string(what) + " must be an integer string");
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw CacheCorruptionError(line, std::string("bad integer in ") + what);
    return v;
}

Rational parse_rational(const json& j, std::size_t line) {
    if (!j.is_string()) throw CacheCorruptionError(line, "order basis entries must be rational strings");
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
        throw CacheCorruptionError(line, "bad rational in order basis");
    q.canonicalize();
    return q;
}

json parse_json(const std::string& line, std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw CacheCorruptionError(line_no, std::string("invalid JSON: ") + e.what());
    }
}

template <class T>
T field_of(const json& j, const char* key, std::size_t line) {
    if (!j.is_object() || !j.contains(key)) throw CacheCorruptionError(line, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw CacheCorruptionError(line, std::string("wrong type for '") + key + "'");
    }
}

}  // namespace

std::string header_line(const CacheHeader& h) {
    json j;
    j["type"] = "header";
    j["format"] = kFormat;
    j["version"] = 1;
    j["degree"] = h.degree;
    j["disc_bound"] = h.disc_bound.get_str();
    j["sn_only"] = h.sn_only;
    return j.dump();
}

std::string record_line(const FieldRecord& r) {
    json j;
    j["type"] = "field";
    json coeffs = json::array();
    for (const auto& c : r.min_poly.lower()) coeffs.push_back(c.get_str());
    j["coeffs"] = coeffs;
    j["poly_disc"] = r.poly_disc.get_str();
    j["field_disc"] = r.field_disc.get_str();
    j["index"] = r.index.get_str();
    j["r1"] = r.r1;
    j["r2"] = r.r2;
    j["galois"] = r.galois.to_string();
    j["stage"] = r.stage;
    json basis = json::array();
    for (std::size_t i = 0; i < r.order_basis.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < r.order_basis.cols(); ++k) row.push_back(r.order_basis(i, k).get_str());
        basis.push_back(row);
    }
    j["order_basis"] = basis;
    return j.dump();
}

std::string stage_line(int stage, std::size_t count, double bound, bool final_stage) {
    json j;
    j["type"] = "stage";
    j["stage"] = stage;
    j["count"] = count;
    j["bound"] = bound;
    j["final"] = final_stage;
    return j.dump();
}

FieldRecord parse_record_line(const std::string& line, int degree, std::size_t line_no) {
    return [&] {
        const json j = parse_json(line, line_no);
        if (field_of<std::string>(j, "type", line_no) != "field") throw CacheCorruptionError(line_no, "expected a field line");
        const json& cj = j.at("coeffs");
        if (!cj.is_array() || static_cast<int>(cj.size()) != degree)
            throw CacheCorruptionError(line_no, "coefficient list does not match the cache degree");
        std::vector<Integer> lower;
        for (const auto& c : cj) lower.push_back(parse_integer(c, line_no, "coeffs"));
        FieldRecord r;
        r.min_poly = MonicIntPoly(lower);
        r.poly_disc = parse_integer(j.value("poly_disc", json()), line_no, "poly_disc");
        r.field_disc = parse_integer(j.value("field_disc", json()), line_no, "field_disc");
        r.index = parse_integer(j.value("index", json()), line_no, "index");
        r.r1 = field_of<int>(j, "r1", line_no);
        r.r2 = field_of<int>(j, "r2", line_no);
        r.stage = field_of<int>(j, "stage", line_no);
        try {
            r.galois = fields::GaloisLabel::parse(field_of<std::string>(j, "galois", line_no));
        } catch (const DomainError& e) {
            throw CacheCorruptionError(line_no, e.what());
        }
        const json& bj = j.contains("order_basis") ? j.at("order_basis") : json();
        if (!bj.is_array() || static_cast<int>(bj.size()) != degree)
            throw CacheCorruptionError(line_no, "order basis must have one row per degree");
        r.order_basis = QMatrix(static_cast<std::size_t>(degree), static_cast<std::size_t>(degree));
        for (std::size_t i = 0; i < bj.size(); ++i) {
            if (!bj[i].is_array() || static_cast<int>(bj[i].size()) != degree)
                throw CacheCorruptionError(line_no, "order basis row has the wrong length");
            for (std::size_t k = 0; k < bj[i].size(); ++k) r.order_basis(i, k) = parse_rational(bj[i][k], line_no);
        }
        // Cheap consistency: signature and disc = index^2 * field disc.
        if (r.r1 < 0 || r.r2 < 0 || r.r1 + 2 * r.r2 != degree) throw CacheCorruptionError(line_no, "bad signature");
        if (r.index <= 0 || r.index * r.index * r.field_disc != r.poly_disc)
            throw CacheCorruptionError(line_no, "poly_disc != index^2 * field_disc");
        if (algebra::poly_discriminant(r.min_poly) != r.poly_disc)
            throw CacheCorruptionError(line_no, "poly_disc does not match the polynomial");
        return r;
    }();
}

CacheContents read_cache(std::istream& in) {
    CacheContents c;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            // Unterminated last line: an interrupted write, dropped.
            c.truncated_tail = true;
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    c.lines = lines.size();
    if (lines.empty()) return c;
    const json h = parse_json(lines[0], 1);
    if (field_of<std::string>(h, "type", 1) != "header" || field_of<std::string>(h, "format", 1) != kFormat)
        throw CacheCorruptionError(1, "not a fieldcount cache header");
    if (field_of<int>(h, "version", 1) != 1) throw CacheCorruptionError(1, "unsupported cache version");
    c.header.degree = field_of<int>(h, "degree", 1);
    if (c.header.degree < 2 || c.header.degree > fields::kMaxHunterDegree) throw CacheCorruptionError(1, "bad degree");
    c.header.disc_bound = parse_integer(h.value("disc_bound", json()), 1, "disc_bound");
    c.header.sn_only = field_of<bool>(h, "sn_only", 1);

    std::vector<FieldRecord> pending;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t no = i + 1;
        if (c.complete) throw CacheCorruptionError(no, "content after the final stage marker");
        const json j = parse_json(lines[i], no);
        const auto type = field_of<std::string>(j, "type", no);
        if (type == "field") {
            pending.push_back(parse_record_line(lines[i], c.header.degree, no));
        } else if (type == "stage") {
            const int s = field_of<int>(j, "stage", no);
            if (s != c.last_stage + 1) throw CacheCorruptionError(no, "stage markers out of order");
            if (field_of<std::size_t>(j, "count", no) != pending.size())
                throw CacheCorruptionError(no, "stage record count mismatch");
            c.stage_counts.push_back(pending.size());
            for (auto& r : pending) c.records.push_back(std::move(r));
            pending.clear();
            c.last_stage = s;
            c.complete = field_of<bool>(j, "final", no);
        } else {
            throw CacheCorruptionError(no, "unknown line type '" + type + "'");
        }
    }
    // Records after the last marker belong to an unfinished stage and are recomputed.
    return c;
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

CacheContents read_cache_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open cache '" + path + "'");
    return read_cache(in);
}

void write_completed_stages(std::ostream& out, const CacheContents& c, const std::vector<double>& stage_bounds) {
    std::size_t k = 0;
    for (int s = 0; s <= c.last_stage; ++s) {
        const std::size_t cnt = c.stage_counts[static_cast<std::size_t>(s)];
        for (std::size_t i = 0; i < cnt; ++i) out << record_line(c.records[k++]) << '\n';
        const bool last = s + 1 == static_cast<int>(stage_bounds.size());
        out << stage_line(s, cnt, stage_bounds.at(static_cast<std::size_t>(s)), last) << '\n';
    }
}

EnumerateRun enumerate_with_cache(int n, const Integer& X, bool sn_only, const std::string& path,
                                  const fields::EnumerationOptions& base) {
    EnumerateRun run;
    const auto schedule = fields::stage_schedule(n, X);
    CacheContents old;
    bool reuse = false;
    if (file_exists(path)) {
        old = read_cache_file(path);
        reuse = old.lines > 0 && old.header.degree == n && old.header.disc_bound == X;
    }
    CacheHeader header{n, X, sn_only};
    if (reuse && old.complete) {
        run.result.records = old.records;
        std::sort(run.result.records.begin(), run.result.records.end(), fields::record_less);
        auto& md = run.result.metadata;
        md.degree = n;
        md.disc_bound = X;
        md.stage_bounds = schedule;
        md.hunter_bound = schedule.back();
        md.complete = n != 4;
        run.resumed = true;
        if (old.header.sn_only != sn_only) {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << header_line(header) << '\n';
            write_completed_stages(out, old, schedule);
        }
        return run;
    }
    fields::EnumerationOptions opt = base;
    opt.filter = fields::FieldFilter::Any;
    // Rewrite header and completed stages, then append each new stage as it finishes.
    std::ofstream app(path, std::ios::binary | std::ios::trunc);
    if (!app) throw DomainError("cannot write cache '" + path + "'");
    app << header_line(header) << '\n';
    if (reuse) {
        run.resumed = true;
        opt.resume_stage = old.last_stage;
        opt.resume_records = old.records;
        write_completed_stages(app, old, schedule);
    }
    app.flush();
    const int S = static_cast<int>(schedule.size()) - 1;
    auto user_cb = opt.on_stage_complete;
    opt.on_stage_complete = [&](int s, const std::vector<FieldRecord>& fresh) {
        for (const auto& r : fresh) app << record_line(r) << '\n';
        app << stage_line(s, fresh.size(), schedule[static_cast<std::size_t>(s)], s == S) << '\n';
        app.flush();
        ++run.stages_computed;
        if (user_cb) user_cb(s, fresh);
    };
    run.result = fields::enumerate_fields(n, X, opt);
    return run;
}

std::vector<FieldRecord> cache_report_records(const CacheContents& c) {
    std::vector<FieldRecord> out;
    for (const auto& r : c.records)
        if (!c.header.sn_only || r.galois.kind == fields::GaloisKind::SnCertified) out.push_back(r);
    std::sort(out.begin(), out.end(), fields::record_less);
    return out;
}

}  // namespace fieldcount::harness
