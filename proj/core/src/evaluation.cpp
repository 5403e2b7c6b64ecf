#include "tcprio/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace tcprio {

namespace {

std::string double_repr(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    internal_check(ec == std::errc{}, "double formatting failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view token, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw InputError(std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

}  // namespace

ApfdRecord apfd(const Ordering& ordering, const KillMatrix& kills) {
    const std::size_t n = kills.test_count();
    if (ordering.permutation.size() != n) {
        throw InputError("ordering has " + std::to_string(ordering.permutation.size()) +
                         " tests but kill matrix has " + std::to_string(n));
    }
    validate_permutation(ordering, n);

    const std::size_t k = kills.fault_count();
    std::vector<std::size_t> first_kill(k, 0);
    std::size_t found = 0;
    for (std::size_t i = 0; i < n && found < k; ++i) {
        kills.row(ordering.permutation[i]).for_each_set_bit([&](std::size_t f) {
            if (first_kill[f] == 0) {
                first_kill[f] = i + 1;
                ++found;
            }
        });
    }
    internal_check(found == k, "fault without killer reached apfd");

    const auto tf_sum = std::accumulate(first_kill.begin(), first_kill.end(),
                                        std::uint64_t{0});
    const double value = 1.0 -
                         static_cast<double>(tf_sum) / (static_cast<double>(n) * k) +
                         1.0 / (2.0 * static_cast<double>(n));
    internal_check(value > 0.0 && value < 1.0, "apfd outside (0, 1)");
    return ApfdRecord{ordering.strategy, ordering.seed, value, n, k};
}

double apsc_of_permutation(std::span<const std::size_t> permutation,
                           const CoverageMatrix& matrix) {
    const std::size_t n = matrix.test_count();
    const std::size_t m = matrix.unit_count();
    if (permutation.size() != n) {
        throw InputError("permutation has " + std::to_string(permutation.size()) +
                         " tests but matrix has " + std::to_string(n));
    }
    BitRow seen(m);
    std::uint64_t ts_sum = 0;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < n && covered < m; ++i) {
        const BitRow& row = matrix.row(permutation[i]);
        const std::size_t fresh = row.andnot_popcount(seen);
        if (fresh > 0) {
            ts_sum += static_cast<std::uint64_t>(i + 1) * fresh;
            covered += fresh;
            seen.or_assign(row);
        }
    }
    ts_sum += static_cast<std::uint64_t>(m - covered) * (n + 1);
    return 1.0 - static_cast<double>(ts_sum) / (static_cast<double>(n) * m) +
           1.0 / (2.0 * static_cast<double>(n));
}

double apsc(const Ordering& ordering, const CoverageMatrix& matrix) {
    validate_permutation(ordering, matrix.test_count());
    return apsc_of_permutation(ordering.permutation, matrix);
}

std::vector<EfficiencyRow> summarize_efficiency(std::span<const Ordering> orderings) {
    if (orderings.empty()) {
        throw InputError("no orderings to summarize");
    }
    std::vector<StrategyId> order;
    std::vector<std::vector<const Ordering*>> runs;
    for (const auto& o : orderings) {
        const auto it = std::find(order.begin(), order.end(), o.strategy);
        if (it == order.end()) {
            order.push_back(o.strategy);
            runs.push_back({&o});
        } else {
            runs[static_cast<std::size_t>(it - order.begin())].push_back(&o);
        }
    }

    std::vector<EfficiencyRow> rows;
    rows.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        EfficiencyRow row;
        row.strategy = order[i];
        row.runs = runs[i].size();
        std::vector<double> elapsed;
        elapsed.reserve(runs[i].size());
        double sum_ns = 0, sum_rc = 0, sum_tie = 0, sum_restart = 0;
        for (const Ordering* o : runs[i]) {
            const auto& inst = o->instrumentation;
            elapsed.push_back(static_cast<double>(inst.elapsed_ns));
            sum_ns += static_cast<double>(inst.elapsed_ns);
            sum_rc += static_cast<double>(inst.recompute_count);
            sum_tie += static_cast<double>(inst.tie_count);
            sum_restart += static_cast<double>(inst.restart_count);
        }
        const auto count = static_cast<double>(runs[i].size());
        row.mean_elapsed_ns = sum_ns / count;
        row.mean_recompute_count = sum_rc / count;
        row.mean_tie_count = sum_tie / count;
        row.mean_restart_count = sum_restart / count;
        std::sort(elapsed.begin(), elapsed.end());
        const std::size_t half = elapsed.size() / 2;
        row.median_elapsed_ns = elapsed.size() % 2 == 1
                                    ? elapsed[half]
                                    : (elapsed[half - 1] + elapsed[half]) / 2.0;
        rows.push_back(row);
    }
    return rows;
}

double improvement_ratio(double mean_a, double mean_b) {
    if (mean_b == 0.0) return 0.0;
    return 1.0 - mean_a / mean_b;
}

void write_apfd_csv(std::ostream& out, std::span<const ApfdRecord> records) {
    out << "strategy,seed,apfd\n";
    for (const auto& r : records) {
        out << strategy_name(r.strategy) << ',' << r.seed << ',' << double_repr(r.apfd)
            << '\n';
    }
}

std::vector<ApfdRecord> read_apfd_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("empty apfd csv");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "strategy,seed,apfd") {
        throw InputError("apfd csv must start with 'strategy,seed,apfd'");
    }
    std::vector<ApfdRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw InputError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        ApfdRecord record;
        const auto id = parse_strategy(fields[0]);
        if (!id) {
            throw InputError("line " + std::to_string(line_no) + ": unknown strategy '" +
                             std::string(fields[0]) + "'");
        }
        record.strategy = *id;
        std::uint64_t seed = 0;
        const auto [ptr, ec] =
            std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), seed);
        if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
            throw InputError("line " + std::to_string(line_no) + ": malformed seed");
        }
        record.seed = seed;
        record.apfd = parse_double(fields[2], "apfd");
        if (!(record.apfd > 0.0 && record.apfd < 1.0)) {
            throw InputError("line " + std::to_string(line_no) + ": apfd outside (0, 1)");
        }
        records.push_back(record);
    }
    return records;
}

void write_efficiency_csv(std::ostream& out, std::span<const EfficiencyRow> rows) {
    out << "strategy,runs,mean_elapsed_ns,median_elapsed_ns,mean_recompute_count,"
           "mean_tie_count,mean_restart_count\n";
    for (const auto& r : rows) {
        out << strategy_name(r.strategy) << ',' << r.runs << ','
            << double_repr(r.mean_elapsed_ns) << ',' << double_repr(r.median_elapsed_ns)
            << ',' << double_repr(r.mean_recompute_count) << ','
            << double_repr(r.mean_tie_count) << ',' << double_repr(r.mean_restart_count)
            << '\n';
    }
}

std::string format_efficiency_table(std::span<const EfficiencyRow> rows) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-16s %6s %14s %14s %14s %10s %10s\n", "strategy",
                  "runs", "mean_ms", "median_ms", "mean_recomp", "mean_tie", "mean_rst");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-16s %6zu %14.3f %14.3f %14.1f %10.2f %10.2f\n",
                      std::string(strategy_name(r.strategy)).c_str(), r.runs,
                      r.mean_elapsed_ns / 1e6, r.median_elapsed_ns / 1e6,
                      r.mean_recompute_count, r.mean_tie_count, r.mean_restart_count);
        out << buf;
    }
    return out.str();
}

}  // namespace tcprio
