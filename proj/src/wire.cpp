#include "ppsp/wire.hpp"

#include <string>

#include "ppsp/error.hpp"

namespace ppsp::wire {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

[[noreturn]] void truncated(std::size_t offset, std::size_t missing, const char* what) {
  throw Error(ErrorCode::kFraming, "truncated frame: missing " + std::to_string(missing) +
                                       " byte(s) of " + what + " at offset " + std::to_string(offset));
}

bool known_tag(std::uint8_t t) {
  return t == static_cast<std::uint8_t>(Tag::kRound1) || t == static_cast<std::uint8_t>(Tag::kRound2);
}

}  // namespace

std::vector<std::uint8_t> encode(const Frame& frame) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(frame.tag));
  put_u32(out, static_cast<std::uint32_t>(frame.values.size()));
  for (const auto& v : frame.values) {
    if (sgn(v) < 0) throw Error(ErrorCode::kInvalidArgument, "wire: negative integers are not encodable");
    std::size_t len = 0;
    if (sgn(v) != 0) len = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    put_u32(out, static_cast<std::uint32_t>(len));
    const std::size_t at = out.size();
    out.resize(at + len);
    if (len != 0) {
      std::size_t written = 0;
      mpz_export(out.data() + at, &written, 1, 1, 1, 0, v.get_mpz_t());
    }
  }
  return out;
}

std::size_t bytes_needed(std::span<const std::uint8_t> prefix) {
  if (prefix.empty()) return 5;
  if (!known_tag(prefix[0])) {
    throw Error(ErrorCode::kFraming, "unknown message tag 0x" + std::to_string(prefix[0]) + " at offset 0");
  }
  if (prefix.size() < 5) return 5;
  const std::uint32_t count = get_u32(prefix, 1);
  std::size_t offset = 5;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (prefix.size() < offset + 4) return offset + 4;
    offset += 4 + get_u32(prefix, offset);
    if (prefix.size() < offset) return offset;
  }
  return offset;
}

Frame decode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) truncated(0, 1, "tag");
  if (!known_tag(bytes[0])) {
    throw Error(ErrorCode::kFraming, "unknown message tag " + std::to_string(bytes[0]) + " at offset 0");
  }
  Frame frame;
  frame.tag = static_cast<Tag>(bytes[0]);
  if (bytes.size() < 5) truncated(1, 5 - bytes.size(), "count");
  const std::uint32_t count = get_u32(bytes, 1);

  std::size_t offset = 5;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (bytes.size() < offset + 4) truncated(offset, offset + 4 - bytes.size(), "integer length");
    const std::uint32_t len = get_u32(bytes, offset);
    offset += 4;
    if (bytes.size() - offset < len) truncated(offset, len - (bytes.size() - offset), "integer magnitude");
    if (len != 0 && bytes[offset] == 0) {
      throw Error(ErrorCode::kFraming, "integer at offset " + std::to_string(offset) + " has a leading zero byte");
    }
    mpz_class v = 0;
    if (len != 0) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, bytes.data() + offset);
    frame.values.push_back(std::move(v));
    offset += len;
  }
  if (offset != bytes.size()) {
    throw Error(ErrorCode::kFraming, std::to_string(bytes.size() - offset) +
                                         " trailing byte(s) after frame end at offset " + std::to_string(offset));
  }
  return frame;
}

Frame to_frame(const Round1Msg& msg) {
  Frame f{Tag::kRound1, {}};
  f.values.reserve(msg.C.size() + 2);
  f.values.push_back(msg.p);
  f.values.push_back(msg.alpha);
  f.values.insert(f.values.end(), msg.C.begin(), msg.C.end());
  return f;
}

Frame to_frame(const Round2Msg& msg) { return Frame{Tag::kRound2, {msg.D}}; }

Round1Msg to_round1(const Frame& frame) {
  if (frame.tag != Tag::kRound1) throw Error(ErrorCode::kFraming, "expected a Round1 frame (tag 0x01)");
  if (frame.values.size() < 2) throw Error(ErrorCode::kFraming, "Round1 frame needs at least p and alpha");
  Round1Msg m;
  m.p = frame.values[0];
  m.alpha = frame.values[1];
  m.C.assign(frame.values.begin() + 2, frame.values.end());
  return m;
}

Round2Msg to_round2(const Frame& frame) {
  if (frame.tag != Tag::kRound2) throw Error(ErrorCode::kFraming, "expected a Round2 frame (tag 0x02)");
  if (frame.values.size() != 1) {
    throw Error(ErrorCode::kFraming,
                "Round2 frame carries " + std::to_string(frame.values.size()) + " values, expected 1");
  }
  return Round2Msg{frame.values[0]};
}

}  // namespace ppsp::wire
