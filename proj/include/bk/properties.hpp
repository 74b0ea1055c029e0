#pragma once

// Randomized invariant checks for the exact-arithmetic and group layers.
// Every instance is drawn from one std::mt19937_64 stream, so a seed fixes the run.

#include <cstdint>
#include <string>
#include <vector>

namespace bk {

struct PropertyResult {
    std::string suite;  // "exactnum" or "groups"
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;

    std::size_t instances(const std::string& suite) const;
    bool ok() const;
};

PropertyReport run_properties(std::uint64_t seed, std::size_t per_property = 40);

}  // namespace bk
