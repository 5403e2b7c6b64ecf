#include "tcprio/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

namespace tcprio {

namespace {

struct RankData {
    // 2 x midrank per pooled element (a's elements first), kept integral so
    // rank sums are exact.
    std::vector<std::uint64_t> twice_rank;
    std::uint64_t tie_cubic_sum = 0;  // sum of t^3 - t over tie groups
    bool has_ties = false;
};

RankData midranks(std::span<const double> a, std::span<const double> b) {
    const std::size_t total = a.size() + b.size();
    std::vector<std::pair<double, std::size_t>> pooled;
    pooled.reserve(total);
    for (std::size_t i = 0; i < a.size(); ++i) pooled.emplace_back(a[i], i);
    for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], a.size() + i);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    RankData out;
    out.twice_rank.assign(total, 0);
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i + 1;
        while (j < total && pooled[j].first == pooled[i].first) ++j;
        // group spans 1-based ranks i+1 .. j, midrank = (i+1+j)/2
        const std::uint64_t twice = static_cast<std::uint64_t>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) out.twice_rank[pooled[k].second] = twice;
        const std::uint64_t t = j - i;
        if (t > 1) {
            out.has_ties = true;
            out.tie_cubic_sum += t * t * t - t;
        }
        i = j;
    }
    return out;
}

std::uint64_t twice_rank_sum_a(const RankData& ranks, std::size_t n_a) {
    return std::accumulate(ranks.twice_rank.begin(), ranks.twice_rank.begin() + n_a,
                           std::uint64_t{0});
}

/// Exact two-tailed p for tie-free samples: double the lower tail of the
/// exact U null distribution (symmetric about n_a*n_b/2), capped at 1.
double exact_two_tailed(std::size_t n_a, std::size_t n_b, std::uint64_t u_a) {
    const std::size_t total = n_a + n_b;
    const std::size_t max_sum = total * (total + 1) / 2;
    // ways[k][s] = number of k-subsets of ranks {1..r} with rank sum s
    std::vector<std::vector<double>> ways(n_a + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t r = 1; r <= total; ++r) {
        for (std::size_t k = std::min(n_a, r); k >= 1; --k) {
            for (std::size_t s = max_sum; s >= r; --s) {
                ways[k][s] += ways[k - 1][s - r];
            }
        }
    }
    const std::uint64_t min_rank_sum = n_a * (n_a + 1) / 2;
    const std::uint64_t u_span = n_a * n_b;
    const std::uint64_t u_min = std::min(u_a, u_span - u_a);
    double tail = 0.0, count_total = 0.0;
    for (std::size_t s = min_rank_sum; s <= max_sum; ++s) {
        const double c = ways[n_a][s];
        if (c == 0.0) continue;
        count_total += c;
        if (s - min_rank_sum <= u_min) tail += c;
    }
    return std::min(1.0, 2.0 * tail / count_total);
}

std::string double_repr(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    internal_check(ec == std::errc{}, "double formatting failed");
    return std::string(buf, ptr);
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Better: return "BETTER";
        case Verdict::Worse: return "WORSE";
        case Verdict::NoDifference: return "NODIFF";
    }
    throw InternalError("unknown verdict");
}

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw InputError("mann-whitney needs non-empty samples");
    }
    const std::size_t n_a = a.size();
    const std::size_t n_b = b.size();
    const std::size_t total = n_a + n_b;
    const RankData ranks = midranks(a, b);

    // 2U = 2R_a - n_a(n_a+1)
    const std::uint64_t twice_ra = twice_rank_sum_a(ranks, n_a);
    const std::uint64_t twice_u = twice_ra - static_cast<std::uint64_t>(n_a) * (n_a + 1);

    if (total <= 20 && !ranks.has_ties) {
        return exact_two_tailed(n_a, n_b, twice_u / 2);
    }

    // Normal approximation with midrank tie correction and continuity
    // correction.
    const double nm = static_cast<double>(n_a) * static_cast<double>(n_b);
    const double n_total = static_cast<double>(total);
    const double tie_term =
        static_cast<double>(ranks.tie_cubic_sum) / (n_total * (n_total - 1.0));
    const double variance = nm / 12.0 * ((n_total + 1.0) - tie_term);
    if (variance <= 0.0) {
        return 1.0;  // all pooled values identical
    }
    const double u = static_cast<double>(twice_u) / 2.0;
    const double mean = nm / 2.0;
    const double numer = std::max(0.0, std::abs(u - mean) - 0.5);
    const double z = numer / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double vargha_delaney_a12(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw InputError("a12 needs non-empty samples");
    }
    const std::size_t n_a = a.size();
    const std::size_t n_b = b.size();
    const RankData ranks = midranks(a, b);
    const std::uint64_t twice_ra = twice_rank_sum_a(ranks, n_a);
    // A12 = (R_a/n_a - (n_a+1)/2) / n_b, with an integral numerator:
    const auto numer = static_cast<std::int64_t>(twice_ra) -
                       static_cast<std::int64_t>(n_a * (n_a + 1));
    return static_cast<double>(numer) /
           (2.0 * static_cast<double>(n_a) * static_cast<double>(n_b));
}

StatSummary compare(std::span<const double> a, std::span<const double> b, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InputError("alpha must be in (0, 1)");
    }
    StatSummary s;
    s.alpha = alpha;
    s.n_a = a.size();
    s.n_b = b.size();
    s.p_value = mann_whitney_u(a, b);
    s.a12 = vargha_delaney_a12(a, b);
    if (s.p_value < alpha && s.a12 > 0.5) {
        s.verdict = Verdict::Better;
    } else if (s.p_value < alpha && s.a12 < 0.5) {
        s.verdict = Verdict::Worse;
    } else {
        s.verdict = Verdict::NoDifference;
    }
    return s;
}

StatSummary compare(std::span<const ApfdRecord> a, std::span<const ApfdRecord> b,
                    double alpha) {
    std::vector<double> va, vb;
    va.reserve(a.size());
    vb.reserve(b.size());
    for (const auto& r : a) va.push_back(r.apfd);
    for (const auto& r : b) vb.push_back(r.apfd);
    return compare(va, vb, alpha);
}

std::string format_verdict_cell(const StatSummary& summary) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s (%.2f)",
                  std::string(verdict_name(summary.verdict)).c_str(), summary.a12);
    return buf;
}

void write_comparison_csv(std::ostream& out, std::string_view label_a,
                          std::string_view label_b, const StatSummary& summary) {
    out << "sample_a,sample_b,n_a,n_b,p_value,a12,verdict\n";
    out << label_a << ',' << label_b << ',' << summary.n_a << ',' << summary.n_b << ','
        << double_repr(summary.p_value) << ',' << double_repr(summary.a12) << ','
        << verdict_name(summary.verdict) << '\n';
}

std::string format_comparison_text(std::string_view label_a, std::string_view label_b,
                                   const StatSummary& summary) {
    std::ostringstream out;
    out << label_a << " vs " << label_b << ": " << format_verdict_cell(summary)
        << "  [p=" << double_repr(summary.p_value) << ", A12=" << double_repr(summary.a12)
        << ", nA=" << summary.n_a << ", nB=" << summary.n_b
        << ", alpha=" << double_repr(summary.alpha) << "]";
    return out.str();
}

}  // namespace tcprio
