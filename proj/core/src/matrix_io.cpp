#include "tcprio/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace tcprio {

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

bool blank(std::string_view s) {
    return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::size_t parse_size(std::string_view token, std::size_t line, const char* what) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        fail_line(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t start = s.find_first_not_of(' ', pos);
        if (start == std::string_view::npos) break;
        std::size_t end = s.find(' ', start);
        if (end == std::string_view::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        pos = end;
    }
    return out;
}

struct TsvBody {
    std::size_t rows = 0;
    std::size_t width = 0;
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> lists;
};

TsvBody parse_tsv_body(std::istream& in, const char* index_what) {
    TsvBody body;
    std::string line;
    if (!std::getline(in, line)) {
        fail_line(1, "missing header");
    }
    strip_cr(line);
    const auto header = split_spaces(line);
    if (header.size() != 2) {
        fail_line(1, "malformed header (expected '<rows> <width>')");
    }
    body.rows = parse_size(header[0], 1, "row count");
    body.width = parse_size(header[1], 1, "width");
    if (body.rows == 0 || body.width == 0) {
        fail_line(1, "header counts must be positive");
    }

    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < body.rows; ++i) {
        const std::size_t line_no = i + 2;
        if (!std::getline(in, line)) {
            fail_line(line_no, "expected " + std::to_string(body.rows) + " rows, found " +
                                   std::to_string(i));
        }
        strip_cr(line);
        const std::size_t tab = line.find('\t');
        std::string name = line.substr(0, tab);
        std::string_view rest =
            tab == std::string::npos ? std::string_view{} : std::string_view(line).substr(tab + 1);
        if (name.empty()) {
            fail_line(line_no, "empty test name");
        }
        if (const auto [it, inserted] = seen.emplace(name, line_no); !inserted) {
            fail_line(line_no, "duplicate test name '" + name + "' (first on line " +
                                   std::to_string(it->second) + ")");
        }
        std::vector<std::size_t> list;
        for (const auto token : split_spaces(rest)) {
            const std::size_t idx = parse_size(token, line_no, "index");
            if (idx >= body.width) {
                fail_line(line_no, std::string(index_what) + " index out of range (" +
                                       std::to_string(idx) + " >= " +
                                       std::to_string(body.width) + ")");
            }
            list.push_back(idx);
        }
        body.names.push_back(std::move(name));
        body.lists.push_back(std::move(list));
    }
    std::size_t line_no = body.rows + 2;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (!blank(line)) {
            fail_line(line_no, "unexpected content after last row");
        }
        ++line_no;
    }
    return body;
}

void write_tsv_body(std::ostream& out, std::span<const std::string> names, std::size_t width,
                    const std::vector<std::vector<std::size_t>>& lists) {
    out << names.size() << ' ' << width << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << names[i] << '\t';
        for (std::size_t j = 0; j < lists[i].size(); ++j) {
            if (j > 0) out << ' ';
            out << lists[i][j];
        }
        out << '\n';
    }
}

std::vector<std::vector<std::size_t>> bit_lists(std::span<const BitRow> rows) {
    std::vector<std::vector<std::size_t>> lists(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].for_each_set_bit([&](std::size_t b) { lists[i].push_back(b); });
    }
    return lists;
}

json parse_json_root(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

TsvBody json_body(const json& root, const char* width_key, const char* list_key) {
    TsvBody body;
    try {
        body.width = root.at(width_key).get<std::size_t>();
        const auto& tests = root.at("tests");
        for (const auto& entry : tests) {
            body.names.push_back(entry.at("name").get<std::string>());
            auto list = entry.at(list_key).get<std::vector<std::size_t>>();
            for (const std::size_t idx : list) {
                if (idx >= body.width) {
                    throw InputError("test " + body.names.back() + ": index " +
                                     std::to_string(idx) + " out of range");
                }
            }
            body.lists.push_back(std::move(list));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON matrix: ") + e.what());
    }
    body.rows = body.names.size();
    return body;
}

json matrix_json(std::span<const std::string> names, std::size_t width, const char* width_key,
                 const char* list_key, std::span<const BitRow> rows) {
    json tests = json::array();
    const auto lists = bit_lists(rows);
    for (std::size_t i = 0; i < names.size(); ++i) {
        tests.push_back({{"name", names[i]}, {list_key, lists[i]}});
    }
    return json{{width_key, width}, {"tests", std::move(tests)}};
}

template <typename T>
T open_and(const std::string& path, T (*fn)(std::istream&, MatrixFormat), MatrixFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return fn(in, format);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

std::string_view format_name(MatrixFormat format) {
    return format == MatrixFormat::Tsv ? "tsv" : "json";
}

std::optional<MatrixFormat> parse_format(std::string_view name) {
    if (name == "tsv") return MatrixFormat::Tsv;
    if (name == "json") return MatrixFormat::Json;
    return std::nullopt;
}

CoverageMatrix parse_coverage(std::istream& in, MatrixFormat format) {
    const TsvBody body = format == MatrixFormat::Tsv
                             ? parse_tsv_body(in, "unit")
                             : json_body(parse_json_root(in), "units", "covers");
    return CoverageMatrix::from_lists(body.names, body.width, body.lists);
}

KillMatrix parse_kill(std::istream& in, MatrixFormat format) {
    const TsvBody body = format == MatrixFormat::Tsv
                             ? parse_tsv_body(in, "fault")
                             : json_body(parse_json_root(in), "faults", "kills");
    return KillMatrix::from_lists(body.names, body.width, body.lists);
}

void write_coverage(std::ostream& out, const CoverageMatrix& matrix, MatrixFormat format) {
    std::vector<BitRow> rows;
    rows.reserve(matrix.test_count());
    for (std::size_t i = 0; i < matrix.test_count(); ++i) rows.push_back(matrix.row(i));
    if (format == MatrixFormat::Tsv) {
        write_tsv_body(out, matrix.test_names(), matrix.unit_count(), bit_lists(rows));
    } else {
        out << matrix_json(matrix.test_names(), matrix.unit_count(), "units", "covers", rows)
                   .dump(2)
            << '\n';
    }
}

void write_kill(std::ostream& out, const KillMatrix& matrix, MatrixFormat format) {
    std::vector<BitRow> rows;
    rows.reserve(matrix.test_count());
    for (std::size_t i = 0; i < matrix.test_count(); ++i) rows.push_back(matrix.row(i));
    if (format == MatrixFormat::Tsv) {
        write_tsv_body(out, matrix.test_names(), matrix.fault_count(), bit_lists(rows));
    } else {
        out << matrix_json(matrix.test_names(), matrix.fault_count(), "faults", "kills", rows)
                   .dump(2)
            << '\n';
    }
}

GroupMap parse_group_map(std::istream& in, const CoverageMatrix& matrix) {
    std::unordered_map<std::string_view, std::size_t> index_of;
    for (std::size_t i = 0; i < matrix.test_count(); ++i) {
        index_of.emplace(matrix.test_name(i), i);
    }
    std::vector<GroupMap::Group> groups;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (blank(line)) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            fail_line(line_no, "expected '<group>\\t<members>'");
        }
        std::string name = line.substr(0, tab);
        std::vector<std::size_t> members;
        for (const auto token : split_spaces(std::string_view(line).substr(tab + 1))) {
            const auto it = index_of.find(token);
            if (it == index_of.end()) {
                fail_line(line_no, "unknown test name '" + std::string(token) + "'");
            }
            members.push_back(it->second);
        }
        groups.emplace_back(std::move(name), std::move(members));
    }
    return GroupMap(std::move(groups), matrix.test_count());
}

std::string serialize_ordering(const Ordering& ordering) {
    const json record{
        {"strategy", strategy_name(ordering.strategy)},
        {"seed", ordering.seed},
        {"permutation", ordering.permutation},
        {"recompute_count", ordering.instrumentation.recompute_count},
        {"tie_count", ordering.instrumentation.tie_count},
        {"restart_count", ordering.instrumentation.restart_count},
        {"elapsed_ns", ordering.instrumentation.elapsed_ns},
    };
    return record.dump();
}

Ordering parse_ordering(std::string_view line) {
    json record;
    try {
        record = json::parse(line);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid ordering record: ") + e.what());
    }
    Ordering out;
    try {
        const auto name = record.at("strategy").get<std::string>();
        const auto id = parse_strategy(name);
        if (!id) {
            throw InputError("unknown strategy '" + name + "'");
        }
        out.strategy = *id;
        out.seed = record.at("seed").get<std::uint64_t>();
        out.permutation = record.at("permutation").get<std::vector<std::size_t>>();
        out.instrumentation.recompute_count = record.at("recompute_count").get<std::uint64_t>();
        out.instrumentation.tie_count = record.at("tie_count").get<std::uint64_t>();
        out.instrumentation.restart_count = record.at("restart_count").get<std::uint64_t>();
        out.instrumentation.elapsed_ns = record.at("elapsed_ns").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid ordering record: ") + e.what());
    }
    try {
        validate_permutation(out, out.permutation.size());
    } catch (const InternalError& e) {
        throw InputError(std::string("invalid ordering record: ") + e.what());
    }
    return out;
}

void write_orderings(std::ostream& out, std::span<const Ordering> orderings) {
    for (const auto& ordering : orderings) {
        out << serialize_ordering(ordering) << '\n';
    }
}

std::vector<Ordering> read_orderings(std::istream& in) {
    std::vector<Ordering> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (blank(line)) continue;
        try {
            out.push_back(parse_ordering(line));
        } catch (const InputError& e) {
            fail_line(line_no, e.what());
        }
    }
    return out;
}

CoverageMatrix load_coverage(const std::string& path, MatrixFormat format) {
    return open_and<CoverageMatrix>(path, &parse_coverage, format);
}

KillMatrix load_kill(const std::string& path, MatrixFormat format) {
    return open_and<KillMatrix>(path, &parse_kill, format);
}

void save_coverage(const std::string& path, const CoverageMatrix& matrix, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_coverage(out, matrix, format);
}

void save_kill(const std::string& path, const KillMatrix& matrix, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_kill(out, matrix, format);
}

std::vector<Ordering> load_orderings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return read_orderings(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_orderings(const std::string& path, std::span<const Ordering> orderings) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_orderings(out, orderings);
}

}  // namespace tcprio
