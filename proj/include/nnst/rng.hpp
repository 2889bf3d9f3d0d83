#pragma once

// Reproducible random streams.
//
// Every random quantity in the library is drawn from a Philox4x32-10
// counter-based generator (Salmon et al., SC'11). A stream is identified by a
// 64-bit key; the low and high 32-bit halves of the key form the Philox key
// and a 64-bit block counter starting at zero forms the low half of the
// 128-bit counter. Each block yields four 32-bit words, consumed in order as
// two 64-bit words (word0 | word1 << 32, word2 | word3 << 32).
//
// Uniforms on (0, 1] use the top 53 bits of a 64-bit word: (w >> 11) + 1
// scaled by 2^-53. Standard normals use the Box-Muller transform on two
// consecutive uniforms (u1, u2), returning sqrt(-2 ln u1) cos(2 pi u2) first
// and caching sqrt(-2 ln u1) sin(2 pi u2) for the following call.
//
// Per-replication keys come from mix_seed(), a SplitMix64 fold over the
// identifying integers. Both the generator and the seeding recipe are fixed:
// changing either changes every reported number.

#include <array>
#include <cstdint>
#include <initializer_list>

namespace nnst {

class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t key) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

    /// The raw 10-round bijection; exposed for known-answer tests.
    [[nodiscard]] static Block bijection(Block counter, Key key) noexcept;

    /// Next 64 bits of the stream.
    std::uint64_t next_u64() noexcept;

    /// Uniform on (0, 1]; never returns 0.
    double uniform() noexcept;

private:
    Key key_;
    std::uint64_t block_index_ = 0;
    Block buffer_{};
    int buffered_words_ = 0;  // 64-bit words still unread in buffer_
};

/// Stream of independent standard normal draws.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t key) noexcept : engine_(key) {}

    double next() noexcept;
    double uniform() noexcept { return engine_.uniform(); }

private:
    Philox4x32 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Order-sensitive fold of identifying integers into one stream key:
/// h = 0x6a09e667f3bcc909; for each v: h = splitmix64(h ^ splitmix64(v)).
[[nodiscard]] std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) noexcept;

}  // namespace nnst
