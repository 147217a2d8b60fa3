#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ppsp/protocol.hpp"

namespace ppsp::wire {

// Frame layout, all lengths big-endian:
//   tag (1 byte) || count (4 bytes) || count x [ len (4 bytes) || magnitude ]
// The magnitude is big-endian without leading zero bytes; zero has len 0.
enum class Tag : std::uint8_t { kRound1 = 0x01, kRound2 = 0x02 };

struct Frame {
  Tag tag = Tag::kRound1;
  std::vector<mpz_class> values;  // non-negative

  friend bool operator==(const Frame&, const Frame&) = default;
};

std::vector<std::uint8_t> encode(const Frame& frame);

// Decodes exactly one frame spanning all of `bytes`. Throws Error(kFraming)
// naming the offset and the missing or surplus byte count.
Frame decode(std::span<const std::uint8_t> bytes);

// Total size of the frame that starts at bytes[0], as far as the prefix
// reveals it: returns a value > bytes.size() while more bytes are needed and
// exactly the frame size once the prefix covers the whole frame. Throws on an
// unknown tag.
std::size_t bytes_needed(std::span<const std::uint8_t> prefix);

// Round1 payload: p, alpha, C_1..C_m. Round2 payload: D.
Frame to_frame(const Round1Msg& msg);
Frame to_frame(const Round2Msg& msg);
Round1Msg to_round1(const Frame& frame);
Round2Msg to_round2(const Frame& frame);

}  // namespace ppsp::wire
