#ifndef RDLS_BYTES_HPP_
#define RDLS_BYTES_HPP_

// Little-endian byte buffers for the binary file formats.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdls/core.hpp"

namespace rdls {

// Decoding failure at a known position in the input.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t offset, const std::string& what)
      : Error("corrupt data at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void i16(std::int32_t v) { u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v))); }
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void text(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }

  const std::vector<std::uint8_t>& data() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  std::uint8_t u8() {
    need(1, "unexpected end of data");
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2, "unexpected end of data");
    const std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    const std::uint32_t hi = u16();
    return lo | (hi << 16);
  }
  std::int32_t i16() { return static_cast<std::int16_t>(u16()); }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n, "unexpected end of data");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void expect_text(std::string_view magic, const char* what) {
    const auto got = bytes(magic.size());
    if (!std::equal(got.begin(), got.end(), magic.begin())) {
      throw DecodeError(offset() - magic.size(), std::string("bad magic, not ") + what);
    }
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  // Absolute offset for error messages.
  std::size_t offset() const { return base_ + pos_; }

 private:
  void need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n) throw DecodeError(base_ + pos_, what);
  }

  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace rdls

#endif  // RDLS_BYTES_HPP_
