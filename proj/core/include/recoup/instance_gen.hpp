#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "recoup/graph.hpp"

namespace recoup {

/// Deterministic random source pinned for instance reproducibility:
/// std::mt19937_64 seeded directly, bounded draws by power-of-two masking
/// with rejection. Part of the instance-file contract; the emitted file,
/// not the seed, is the interchange artifact.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw from {0, ..., bound-1}; bound 0 yields 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const int bits = 64 - std::countl_zero(bound - 1);
        const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0}
                                              : (std::uint64_t{1} << bits) - 1;
        std::uint64_t draw;
        do {
            draw = engine_() & mask;
        } while (draw >= bound);
        return draw;
    }

private:
    std::mt19937_64 engine_;
};

struct InstanceSpec {
    int n_classes = 25;
    int n_modules = 15;
    std::uint64_t seed = 0;
    int count = 100;
};

/// One random instance: every vertex assigned to a module uniformly and
/// independently, then an edge count x drawn uniformly from 1..n(n-1) and a
/// uniformly random x-subset of the ordered non-loop pairs.
ProjectState generate_instance(const InstanceSpec& spec, std::uint64_t seed);

std::string instance_id(const InstanceSpec& spec, int index);

/// `count` instances with per-instance seeds seed + index.
std::vector<std::pair<std::string, ProjectState>> generate_batch(const InstanceSpec& spec);

}  // namespace recoup
