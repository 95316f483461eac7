#include "bitswap/bitstring.hpp"

#include <algorithm>
#include <bit>

#include "bitswap/errors.hpp"

namespace bitswap {

BitString::BitString(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

BitString BitString::ones(std::size_t n) {
    BitString s(n);
    for (auto& w : s.words_) {
        w = ~std::uint64_t{0};
    }
    s.clear_tail();
    return s;
}

BitString BitString::from_string(std::string_view bits) {
    BitString s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            s.set(i, true);
        } else if (bits[i] != '0') {
            throw ConfigError("bit string may only contain '0' and '1'");
        }
    }
    return s;
}

std::size_t BitString::count() const noexcept {
    std::size_t total = 0;
    for (const auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::size_t BitString::count_range(std::size_t first, std::size_t length) const noexcept {
    std::size_t total = 0;
    std::size_t pos = first;
    const std::size_t end = first + length;
    while (pos < end) {
        const std::size_t word = pos / kWordBits;
        const std::size_t offset = pos % kWordBits;
        const std::size_t take = std::min(kWordBits - offset, end - pos);
        std::uint64_t w = words_[word] >> offset;
        if (take < kWordBits) {
            w &= (std::uint64_t{1} << take) - 1;
        }
        total += static_cast<std::size_t>(std::popcount(w));
        pos += take;
    }
    return total;
}

BitString BitString::complement() const {
    BitString s(*this);
    for (auto& w : s.words_) {
        w = ~w;
    }
    s.clear_tail();
    return s;
}

std::string BitString::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

void BitString::clear_tail() noexcept {
    const std::size_t used = size_ % kWordBits;
    if (used != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << used) - 1;
    }
}

} // namespace bitswap
