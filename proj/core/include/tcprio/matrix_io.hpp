#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcprio/coverage_model.hpp"

namespace tcprio {

enum class MatrixFormat { Tsv, Json };

std::string_view format_name(MatrixFormat format);
std::optional<MatrixFormat> parse_format(std::string_view name);

// Coverage TSV (.cov):   line 1 "<n> <m>", then n lines
//                        "<test_name>\t<i1> <i2> ..." (0-based unit indices,
//                        empty list allowed).
// Kill TSV (.kill):      same layout over fault indices; every fault column
//                        must be killed by at least one test.
// JSON coverage:         {"units": m, "tests": [{"name": ..., "covers": [...]}]}
// JSON kill:             {"faults": k, "tests": [{"name": ..., "kills": [...]}]}
// Errors carry 1-based line numbers for the TSV formats.

CoverageMatrix parse_coverage(std::istream& in, MatrixFormat format);
KillMatrix parse_kill(std::istream& in, MatrixFormat format);
void write_coverage(std::ostream& out, const CoverageMatrix& matrix, MatrixFormat format);
void write_kill(std::ostream& out, const KillMatrix& matrix, MatrixFormat format);

/// GroupMap TSV: "<group_name>\t<test_name_1> <test_name_2> ...", member
/// names resolved against the matrix's test names.
GroupMap parse_group_map(std::istream& in, const CoverageMatrix& matrix);

/// One JSON object per line; round-trips Ordering losslessly.
std::string serialize_ordering(const Ordering& ordering);
Ordering parse_ordering(std::string_view line);
void write_orderings(std::ostream& out, std::span<const Ordering> orderings);
std::vector<Ordering> read_orderings(std::istream& in);

// Path conveniences; errors are prefixed with the file name.
CoverageMatrix load_coverage(const std::string& path, MatrixFormat format);
KillMatrix load_kill(const std::string& path, MatrixFormat format);
void save_coverage(const std::string& path, const CoverageMatrix& matrix, MatrixFormat format);
void save_kill(const std::string& path, const KillMatrix& matrix, MatrixFormat format);
std::vector<Ordering> load_orderings(const std::string& path);
void save_orderings(const std::string& path, std::span<const Ordering> orderings);

}  // namespace tcprio
