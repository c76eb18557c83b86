#include "recoup/instance_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <numeric>

namespace recoup {
namespace {

std::string padded(const char* prefix, int value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width > 12 ? 12 : width, value);
    return buf;
}

int digits_for(int max_value) {
    int digits = 1;
    while (max_value >= 10) {
        max_value /= 10;
        ++digits;
    }
    return digits;
}

}  // namespace

ProjectState generate_instance(const InstanceSpec& spec, std::uint64_t seed) {
    if (spec.n_classes < 1) throw InputError("instance needs at least one class");
    if (spec.n_modules < 1) throw InputError("instance needs at least one module");

    SeededRng rng(seed);
    const int n = spec.n_classes;
    const int k = spec.n_modules;

    // Draw order is part of the contract: modules first, then the edge count,
    // then the partial Fisher-Yates subset.
    std::vector<int> module_of(static_cast<std::size_t>(n));
    for (auto& m : module_of) m = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));

    const std::size_t slots = ordered_pair_count(n);
    const std::size_t x = slots == 0 ? 0 : 1 + static_cast<std::size_t>(rng.below(slots));

    std::vector<std::size_t> deck(slots);
    std::iota(deck.begin(), deck.end(), std::size_t{0});
    std::vector<Edge> edges;
    edges.reserve(x);
    for (std::size_t i = 0; i < x; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(slots - i));
        std::swap(deck[i], deck[j]);
        edges.push_back(pair_of_index(deck[i], n));
    }

    const int class_width = digits_for(n - 1);
    std::vector<std::string> names(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        names[static_cast<std::size_t>(v)] = padded("c", v, class_width);
    const int module_width = digits_for(k - 1);
    std::vector<std::string> module_names(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m)
        module_names[static_cast<std::size_t>(m)] = padded("m", m, module_width);

    auto partition =
        std::make_shared<const ModulePartition>(std::move(module_of), k, std::move(module_names));
    return ProjectState(std::move(partition), edges, std::move(names));
}

std::string instance_id(const InstanceSpec& spec, int index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "inst_%llu_%05d",
                  static_cast<unsigned long long>(spec.seed), index);
    return buf;
}

std::vector<std::pair<std::string, ProjectState>> generate_batch(const InstanceSpec& spec) {
    if (spec.count < 0) throw InputError("instance count must be non-negative");
    std::vector<std::pair<std::string, ProjectState>> batch;
    batch.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i)
        batch.emplace_back(instance_id(spec, i),
                           generate_instance(spec, spec.seed + static_cast<std::uint64_t>(i)));
    return batch;
}

}  // namespace recoup
