#include "tcprio/synth.hpp"

#include <string>
#include <vector>

#include "tcprio/rng.hpp"

namespace tcprio {

namespace {

std::vector<std::string> synth_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i));
    return names;
}

std::vector<BitRow> coverage_rows(const SynthSpec& spec, Rng& rng) {
    std::vector<BitRow> rows;
    rows.reserve(spec.tests);
    for (std::size_t i = 0; i < spec.tests; ++i) {
        BitRow row(spec.units);
        for (std::size_t j = 0; j < spec.units; ++j) {
            if (rng.next_double() < spec.density) row.set(j);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void validate_spec(const SynthSpec& spec) {
    if (spec.tests == 0 || spec.units == 0 || spec.faults == 0) {
        throw InputError("synth sizes must be >= 1");
    }
    if (!(spec.density > 0.0 && spec.density <= 1.0)) {
        throw InputError("density must be in (0, 1]");
    }
    if (!(spec.fault_coupling > 0.0 && spec.fault_coupling <= 1.0)) {
        throw InputError("fault coupling must be in (0, 1]");
    }
}

CoverageMatrix generate_coverage(const SynthSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);
    return CoverageMatrix(synth_names(spec.tests), spec.units, coverage_rows(spec, rng));
}

SynthInstance generate_instance(const SynthSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);
    auto cov_rows = coverage_rows(spec, rng);
    CoverageMatrix coverage(synth_names(spec.tests), spec.units, std::move(cov_rows));

    std::vector<BitRow> kill_rows(spec.tests, BitRow(spec.faults));
    std::vector<std::size_t> killers;
    for (std::size_t f = 0; f < spec.faults; ++f) {
        killers.clear();
        for (int attempt = 0; attempt < 1000 && killers.empty(); ++attempt) {
            const std::size_t anchor = rng.index(spec.units);
            for (std::size_t t = 0; t < spec.tests; ++t) {
                if (coverage.covers(t, anchor) && rng.next_double() < spec.fault_coupling) {
                    killers.push_back(t);
                }
            }
        }
        if (killers.empty()) {
            // Nothing covers the anchors (e.g. an all-zero coverage draw);
            // force a killer so the nonempty-column invariant holds.
            killers.push_back(rng.index(spec.tests));
        }
        for (const std::size_t t : killers) kill_rows[t].set(f);
    }
    KillMatrix kills(synth_names(spec.tests), spec.faults, std::move(kill_rows));
    return SynthInstance{std::move(coverage), std::move(kills)};
}

}  // namespace tcprio
