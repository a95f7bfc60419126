#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fieldcount/bounds/exponents.hpp"
#include "fieldcount/bounds/sqfree.hpp"
#include "fieldcount/fingerprint/fingerprint.hpp"

namespace fieldcount::harness {

using fields::FieldRecord;

// "3,4,...,1000000" expands the arithmetic progression given by the first two terms;
// plain lists are taken as is.
std::vector<unsigned long> parse_n_list(std::string_view text);
// "a=-200..200,b=-5..5"; variable names are returned in order.
std::vector<std::pair<std::string, bounds::Range>> parse_box(std::string_view text);

// One JSON object per field: poly, disc, certificate, and the fingerprint export
// {r, c, sigma: [[...]], values: ["..."]}.
std::string fingerprint_json(const fingerprint::Fingerprint& fp);
std::string fingerprint_jsonl(const std::vector<FieldRecord>& records);

// Per field: polynomial, discriminant, signature, label, T2 minima, s(L), shape point.
std::string shape_csv(const std::vector<FieldRecord>& records);

// Columns n, r, c, paper_exponent, schmidt, lower, best_known (+ optimized r, c, exponent).
std::string exponents_csv(const std::vector<unsigned long>& ns, bool optimize);

std::string density_json(const bounds::DensityReport& rep);

}  // namespace fieldcount::harness
