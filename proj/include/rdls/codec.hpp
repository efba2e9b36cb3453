#ifndef RDLS_CODEC_HPP_
#define RDLS_CODEC_HPP_

// Internal lossless plane coder: MED prediction, zigzag mapping and
// Golomb-Rice codes whose parameter k is chosen at the start of every row
// from a running mean of mapped residuals. A row whose residuals are all zero
// costs one flag bit. This is a measuring instrument for comparing transforms,
// not a standards-conforming codec.
//
// Stream layout (all integers little-endian), see docs/FORMATS.md:
//   "RDLC" | version u8 | width u32 | height u32 | min i16 | max i16 |
//   crc32 u32 | payload
// Payload bits are written most-significant-bit first. The CRC covers the
// dimensions, the bounds and every sample, so corruption anywhere in the
// stream is reported instead of yielding a different plane.

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "rdls/bytes.hpp"
#include "rdls/core.hpp"
#include "rdls/estimate.hpp"

namespace rdls {

inline constexpr std::uint8_t kCodecVersion = 1;
inline constexpr std::size_t kCodedHeaderSize = 21;

namespace codec_detail {

// Unary prefixes longer than this escape to a raw 12-bit value.
inline constexpr unsigned kEscapeLength = 32;
inline constexpr unsigned kRawBits = 12;
inline constexpr unsigned kMaxK = 11;
inline constexpr std::uint32_t kResetCount = 64;

constexpr std::uint32_t zigzag(std::int32_t r) {
  return r >= 0 ? static_cast<std::uint32_t>(r) << 1
                : (static_cast<std::uint32_t>(-r) << 1) - 1;
}

constexpr std::int32_t unzigzag(std::uint32_t m) {
  return (m & 1) ? -static_cast<std::int32_t>((m + 1) >> 1)
                 : static_cast<std::int32_t>(m >> 1);
}

// Running mean of mapped residuals shared by encoder and decoder.
class RiceState {
 public:
  explicit RiceState(Bounds b)
      : sum_(std::max<std::uint32_t>(2, static_cast<std::uint32_t>((b.span() + 32) >> 6))) {}

  unsigned k() const {
    unsigned k = 0;
    while (k < kMaxK && (static_cast<std::uint64_t>(count_) << k) < sum_) ++k;
    return k;
  }
  void update(std::uint32_t mapped) {
    sum_ += mapped;
    if (++count_ >= kResetCount) {
      sum_ >>= 1;
      count_ >>= 1;
    }
  }

 private:
  std::uint64_t sum_;
  std::uint32_t count_ = 1;
};

class BitWriter {
 public:
  void bit(unsigned b) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (b & 1));
    if (++fill_ == 8) flush_byte();
  }
  void bits(std::uint32_t v, unsigned n) {
    for (unsigned i = n; i-- > 0;) bit((v >> i) & 1);
  }
  std::vector<std::uint8_t> finish() {
    while (fill_ != 0) bit(0);
    return std::move(out_);
  }

 private:
  void flush_byte() {
    out_.push_back(acc_);
    acc_ = 0;
    fill_ = 0;
  }
  std::vector<std::uint8_t> out_;
  std::uint8_t acc_ = 0;
  unsigned fill_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> data, std::size_t base_offset)
      : data_(data), base_(base_offset) {}

  unsigned bit() {
    if (pos_ >= data_.size() * 8) throw DecodeError(base_ + data_.size(), "truncated payload");
    const unsigned b = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return b;
  }
  std::uint32_t bits(unsigned n) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = (v << 1) | bit();
    return v;
  }
  std::size_t byte_offset() const { return base_ + (pos_ >> 3); }

  // Remaining bits of the last byte must be zero and nothing may follow.
  void finish() {
    while (pos_ & 7) {
      if (bit()) throw DecodeError(byte_offset(), "nonzero padding bits");
    }
    if (pos_ / 8 != data_.size()) throw DecodeError(byte_offset(), "trailing bytes after payload");
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline void put_rice(BitWriter& out, std::uint32_t m, unsigned k) {
  const std::uint32_t q = m >> k;
  if (q < kEscapeLength) {
    for (std::uint32_t i = 0; i < q; ++i) out.bit(0);
    out.bit(1);
    out.bits(m & ((1u << k) - 1), k);
  } else {
    for (unsigned i = 0; i < kEscapeLength; ++i) out.bit(0);
    out.bit(1);
    out.bits(m, kRawBits);
  }
}

inline std::uint32_t get_rice(BitReader& in, unsigned k) {
  std::uint32_t q = 0;
  while (in.bit() == 0) {
    if (++q > kEscapeLength) throw DecodeError(in.byte_offset(), "unary code too long");
  }
  if (q == kEscapeLength) {
    const std::uint32_t m = in.bits(kRawBits);
    if ((m >> k) < kEscapeLength) throw DecodeError(in.byte_offset(), "non-canonical escape");
    return m;
  }
  return (q << k) | in.bits(k);
}

inline std::uint32_t checksum(int width, int height, Bounds b, std::span<const Sample> s) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(width));
  w.u32(static_cast<std::uint32_t>(height));
  w.i16(b.min);
  w.i16(b.max);
  for (Sample v : s) w.i16(v);
  const auto& d = w.data();
  return static_cast<std::uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), d.data(), static_cast<uInt>(d.size())));
}

inline Sample predict_at(std::span<const Sample> s, int width, int x, int y, Sample mid) {
  const auto at = [&](int xx, int yy) { return s[static_cast<std::size_t>(yy) * width + xx]; };
  if (x == 0 && y == 0) return mid;
  if (y == 0) return at(x - 1, y);
  if (x == 0) return at(x, y - 1);
  return detail::med_predict(at(x - 1, y), at(x, y - 1), at(x - 1, y - 1));
}

}  // namespace codec_detail

struct CodedPlane {
  int width = 0;
  int height = 0;
  Bounds bounds;
  std::uint32_t checksum = 0;
  std::vector<std::uint8_t> payload;
  // Where the serialized plane started in its file, for error offsets.
  std::size_t source_offset = 0;

  std::size_t byte_size() const { return kCodedHeaderSize + payload.size(); }

  std::vector<std::uint8_t> serialize() const {
    ByteWriter w;
    w.text("RDLC");
    w.u8(kCodecVersion);
    w.u32(static_cast<std::uint32_t>(width));
    w.u32(static_cast<std::uint32_t>(height));
    w.i16(bounds.min);
    w.i16(bounds.max);
    w.u32(checksum);
    w.bytes(payload);
    return w.take();
  }

  // Parses a complete coded plane; the payload runs to the end of data.
  static CodedPlane parse(std::span<const std::uint8_t> data, std::size_t base_offset = 0) {
    ByteReader r(data, base_offset);
    r.expect_text("RDLC", "a coded plane");
    const std::uint8_t version = r.u8();
    if (version != kCodecVersion) {
      throw DecodeError(r.offset() - 1, "unsupported coder version " + std::to_string(version));
    }
    CodedPlane c;
    c.source_offset = base_offset;
    const std::uint32_t w = r.u32();
    const std::uint32_t h = r.u32();
    // Every row costs at least one payload bit.
    if (w == 0 || h == 0 || w > (1u << 24) || h > (1u << 24) ||
        static_cast<std::uint64_t>(w) * h > (1ull << 28) ||
        h > 8 * static_cast<std::uint64_t>(r.remaining() > 8 ? r.remaining() - 8 : 0)) {
      throw DecodeError(r.offset() - 8, "implausible dimensions");
    }
    c.width = static_cast<int>(w);
    c.height = static_cast<int>(h);
    c.bounds.min = r.i16();
    c.bounds.max = r.i16();
    if (c.bounds.min > c.bounds.max || !kWorkingBounds.contains(c.bounds)) {
      throw DecodeError(r.offset() - 4, "invalid sample bounds");
    }
    c.checksum = r.u32();
    const auto rest = r.bytes(r.remaining());
    c.payload.assign(rest.begin(), rest.end());
    return c;
  }
};

inline CodedPlane encode_plane(const Plane& p) {
  using namespace codec_detail;
  if (!kWorkingBounds.contains(p.bounds())) {
    throw Error("encode_plane: bounds exceed [-511, 511]");
  }
  const int width = p.width();
  const auto s = p.samples();
  const Sample mid = detail::mid_range(p.bounds());
  RiceState state(p.bounds());
  BitWriter out;
  std::vector<std::uint32_t> row(static_cast<std::size_t>(width));
  for (int y = 0; y < p.height(); ++y) {
    bool all_zero = true;
    for (int x = 0; x < width; ++x) {
      const Sample pred = predict_at(s, width, x, y, mid);
      row[x] = zigzag(p.at(x, y) - pred);
      all_zero = all_zero && row[x] == 0;
    }
    const unsigned k = state.k();
    out.bit(all_zero ? 1 : 0);
    for (int x = 0; x < width; ++x) {
      if (!all_zero) put_rice(out, row[x], k);
      state.update(row[x]);
    }
  }
  CodedPlane c;
  c.width = width;
  c.height = p.height();
  c.bounds = p.bounds();
  c.checksum = checksum(width, p.height(), p.bounds(), s);
  c.payload = out.finish();
  return c;
}

inline Plane decode_plane(const CodedPlane& c) {
  using namespace codec_detail;
  const int width = c.width;
  std::vector<Sample> s(static_cast<std::size_t>(width) * static_cast<std::size_t>(c.height));
  const Sample mid = detail::mid_range(c.bounds);
  RiceState state(c.bounds);
  BitReader in(c.payload, c.source_offset + kCodedHeaderSize);
  for (int y = 0; y < c.height; ++y) {
    const unsigned k = state.k();
    const bool all_zero = in.bit() == 1;
    bool any_nonzero = false;
    for (int x = 0; x < width; ++x) {
      const std::uint32_t m = all_zero ? 0 : get_rice(in, k);
      any_nonzero = any_nonzero || m != 0;
      state.update(m);
      const std::int64_t v = std::int64_t{predict_at(s, width, x, y, mid)} + unzigzag(m);
      if (!c.bounds.contains(v)) {
        throw DecodeError(in.byte_offset(), "decoded sample outside plane bounds");
      }
      s[static_cast<std::size_t>(y) * width + x] = static_cast<Sample>(v);
    }
    if (!all_zero && !any_nonzero) {
      throw DecodeError(in.byte_offset(), "zero row not flagged");
    }
  }
  in.finish();
  if (codec_detail::checksum(width, c.height, c.bounds, s) != c.checksum) {
    throw DecodeError(c.source_offset + 17, "checksum mismatch");
  }
  return Plane::make(width, c.height, c.bounds, std::move(s));
}

inline std::vector<std::uint8_t> encode_plane_bytes(const Plane& p) {
  return encode_plane(p).serialize();
}

inline Plane decode_plane_bytes(std::span<const std::uint8_t> data, std::size_t base_offset = 0) {
  return decode_plane(CodedPlane::parse(data, base_offset));
}

// r = 8e/s with e the full coded size including the header.
inline double measure_bitrate(const Plane& p) {
  return bitrate(encode_plane(p).byte_size(), p.size());
}

inline EstimateReport estimate_options_with_codec(const ColorImage& rgb, unsigned threads = 1) {
  EstimateOptions opts;
  opts.with_codec = true;
  opts.threads = threads;
  return estimate_options_with(rgb, opts, [](const Plane& p) { return measure_bitrate(p); });
}

}  // namespace rdls

#endif  // RDLS_CODEC_HPP_
