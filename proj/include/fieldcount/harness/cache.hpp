#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fieldcount/fields/enumerate.hpp"

namespace fieldcount::harness {

using algebra::Integer;
using fields::FieldRecord;

// JSON-lines field cache:
//   {"type":"header", "format":"fieldcount-cache", "version":1, "degree":n, "disc_bound":"X", "sn_only":b}
//   {"type":"field", ...}            records first found in a stage
//   {"type":"stage", "stage":s, "count":k, "bound":C, "final":b}
// A stage is complete once its marker is written; the final stage's marker ends the file.
struct CacheHeader {
    int degree = 0;
    Integer disc_bound;
    bool sn_only = false;
};

struct CacheContents {
    CacheHeader header;
    std::vector<FieldRecord> records;  // all records of completed stages, in file order
    std::vector<std::size_t> stage_counts;  // records per completed stage
    int last_stage = -1;               // last completed stage
    bool complete = false;             // final marker seen
    bool truncated_tail = false;       // an unterminated last line was dropped
    std::size_t lines = 0;
};

std::string header_line(const CacheHeader& h);
std::string record_line(const FieldRecord& r);
std::string stage_line(int stage, std::size_t count, double bound, bool final_stage);
FieldRecord parse_record_line(const std::string& line, int degree, std::size_t line_no);

// Throws CacheCorruptionError with the 1-based line number on malformed content.
CacheContents read_cache(std::istream& in);
CacheContents read_cache_file(const std::string& path);
bool file_exists(const std::string& path);

// Re-emits the completed stages of a cache (records in file order, then markers).
void write_completed_stages(std::ostream& out, const CacheContents& c, const std::vector<double>& stage_bounds);

struct EnumerateRun {
    fields::EnumerationResult result;   // all fields, unfiltered
    int stages_computed = 0;
    bool resumed = false;
};

// Enumerates (n, X) into the cache at `path`, resuming from completed stages when the
// existing cache matches (degree, X); a complete cache is read without enumeration.
EnumerateRun enumerate_with_cache(int n, const Integer& X, bool sn_only, const std::string& path,
                                  const fields::EnumerationOptions& base = {});

// Records usable by downstream reports (sn_only caches keep only certified S_n fields).
std::vector<FieldRecord> cache_report_records(const CacheContents& c);

}  // namespace fieldcount::harness
