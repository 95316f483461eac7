#include "bitswap/fitness.hpp"

#include "bitswap/errors.hpp"

namespace bitswap {

FitnessKind FitnessKind::royal_roads(int blocks, int block_length) {
    if (blocks < 1) {
        throw ConfigError("Royal Roads needs at least one block (K >= 1)");
    }
    if (block_length < 2 || block_length % 2 != 0) {
        throw ConfigError("Royal Roads block length M must be even and >= 2");
    }
    return FitnessKind(Variant::RoyalRoads, blocks, block_length);
}

void FitnessKind::check_length(std::size_t n) const {
    if (variant_ == Variant::RoyalRoads &&
        n != static_cast<std::size_t>(blocks_) * static_cast<std::size_t>(block_length_)) {
        throw ConfigError("Royal Roads requires n = K*M (n=" + std::to_string(n) +
                          ", K=" + std::to_string(blocks_) + ", M=" + std::to_string(block_length_) + ")");
    }
}

int FitnessKind::evaluate(const BitString& genome) const {
    if (variant_ == Variant::OneMax) {
        return onemax(genome);
    }
    return bitswap::royal_roads(genome, blocks_, block_length_);
}

std::string FitnessKind::describe() const {
    if (variant_ == Variant::OneMax) {
        return "onemax";
    }
    return "rr(K=" + std::to_string(blocks_) + ",M=" + std::to_string(block_length_) + ")";
}

int onemax(const BitString& genome) noexcept { return static_cast<int>(genome.count()); }

int royal_roads(const BitString& genome, int blocks, int block_length) {
    if (blocks < 1 || block_length < 1 ||
        genome.size() != static_cast<std::size_t>(blocks) * static_cast<std::size_t>(block_length)) {
        throw ConfigError("Royal Roads requires n = K*M");
    }
    const auto m = static_cast<std::size_t>(block_length);
    int total = 0;
    for (int b = 0; b < blocks; ++b) {
        if (genome.count_range(static_cast<std::size_t>(b) * m, m) == m) {
            total += block_length;
        }
    }
    return total;
}

int aux_value(const BitString& genome) noexcept { return onemax(genome); }

int aux_block(const BitString& genome, int block, int block_length) {
    if (block_length < 1 || block < 0 ||
        static_cast<std::size_t>(block + 1) * static_cast<std::size_t>(block_length) > genome.size()) {
        throw ConfigError("block index out of range");
    }
    const auto m = static_cast<std::size_t>(block_length);
    return static_cast<int>(genome.count_range(static_cast<std::size_t>(block) * m, m));
}

} // namespace bitswap
