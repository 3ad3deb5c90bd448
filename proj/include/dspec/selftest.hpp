#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dspec {

// Outcome of one randomized property suite: pass/fail plus, on failure, the
// serialized inputs of the first failing case.
struct PropertyResult {
    std::string name;
    long long cases = 0;
    bool passed = true;
    std::string witness; // empty while passed
};

struct SelftestReport {
    std::uint64_t seed = 0;
    long long count = 0;
    std::vector<PropertyResult> properties;

    bool all_passed() const;
    std::string to_string() const;
    std::string to_json() const;
};

// Runs `count` randomized cases of every property suite (composition Leibniz
// rule, associativity, direct sums, pullback union law, polygon additivity,
// factor-vs-edge oracle, gauge invariance, coset normalization, JSON round
// trip) with a deterministic generator. count = 0 runs nothing and succeeds.
// Failures are report content, never exceptions.
SelftestReport run_selftest(std::uint64_t seed, long long count);

} // namespace dspec
