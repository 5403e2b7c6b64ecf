#pragma once

#include <cstdint>

#include "tcprio/coverage_model.hpp"

namespace tcprio {

/// Parameters for a synthetic coverage/kill instance. Generation is
/// deterministic under `seed`.
///
/// Coverage: each test covers each unit independently with probability
/// `density`. Kills: each fault is anchored at a uniformly random unit; a
/// test kills the fault with probability `fault_coupling` when it covers the
/// anchor unit, so killers correlate with coverage. A fault whose column
/// comes out empty is redrawn; if no test covers anything, a uniformly
/// random test is forced as the killer so the nonempty-column invariant
/// always holds.
struct SynthSpec {
    std::size_t tests = 1;
    std::size_t units = 1;
    double density = 0.5;
    std::size_t faults = 1;
    double fault_coupling = 0.8;
    std::uint64_t seed = 0;
};

struct SynthInstance {
    CoverageMatrix coverage;
    KillMatrix kills;
};

void validate_spec(const SynthSpec& spec);
SynthInstance generate_instance(const SynthSpec& spec);
CoverageMatrix generate_coverage(const SynthSpec& spec);

}  // namespace tcprio
