#pragma once

/// @file bitstring.hpp
/// @brief Packed fixed-length bit strings used as chromosomes.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bitswap {

/// Fixed-length bit vector packed into 64-bit words.
///
/// The length is set at construction and never changes. Bits past the end of
/// the last word are kept at zero so that word-wise popcounts stay exact.
class BitString {
  public:
    BitString() = default;

    /// All-zero string of length n.
    explicit BitString(std::size_t n);

    static BitString zeros(std::size_t n) { return BitString(n); }
    static BitString ones(std::size_t n);

    /// Parses a string of '0'/'1' characters; throws ConfigError on anything else.
    static BitString from_string(std::string_view bits);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    [[nodiscard]] bool get(std::size_t i) const noexcept {
        return ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
    }

    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }

    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

    /// Number of set bits.
    [[nodiscard]] std::size_t count() const noexcept;

    /// Number of set bits in [first, first + length).
    [[nodiscard]] std::size_t count_range(std::size_t first, std::size_t length) const noexcept;

    /// Bitwise complement, same length.
    [[nodiscard]] BitString complement() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

  private:
    static constexpr std::size_t kWordBits = 64;

    void clear_tail() noexcept;

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace bitswap
