#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "tcprio/evaluation.hpp"

namespace tcprio {

enum class Verdict { Better, Worse, NoDifference };

std::string_view verdict_name(Verdict v);

struct StatSummary {
    double p_value = 1.0;
    double a12 = 0.5;
    Verdict verdict = Verdict::NoDifference;
    double alpha = 0.05;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

/// Two-tailed Mann-Whitney U p-value. Exact enumeration of the U null
/// distribution when |a| + |b| <= 20 and the pooled sample is tie-free;
/// otherwise the normal approximation with midrank tie correction and
/// continuity correction.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Vargha-Delaney A12(a, b) = P(x > y) + 0.5 P(x = y), computed via the
/// rank-sum form with an integer numerator so that identical samples give
/// exactly 0.5.
double vargha_delaney_a12(std::span<const double> a, std::span<const double> b);

/// Better  iff p < alpha and A12(a,b) > 0.5,
/// Worse   iff p < alpha and A12(a,b) < 0.5,
/// NoDifference otherwise.
StatSummary compare(std::span<const double> a, std::span<const double> b, double alpha = 0.05);
StatSummary compare(std::span<const ApfdRecord> a, std::span<const ApfdRecord> b,
                    double alpha = 0.05);

/// "BETTER (0.88)" — verdict symbol plus A12 to two decimals.
std::string format_verdict_cell(const StatSummary& summary);

void write_comparison_csv(std::ostream& out, std::string_view label_a, std::string_view label_b,
                          const StatSummary& summary);
std::string format_comparison_text(std::string_view label_a, std::string_view label_b,
                                   const StatSummary& summary);

}  // namespace tcprio
