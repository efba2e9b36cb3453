#ifndef RDLS_IMAGEIO_HPP_
#define RDLS_IMAGEIO_HPP_

// Binary PPM/PGM, the planar transformed-image format, and dataset
// preparation: Bayer RGGB to RGB, 3x reduction and seeded Gaussian noise.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdls/bytes.hpp"
#include "rdls/core.hpp"
#include "rdls/descriptor.hpp"

namespace rdls {

// ---------------------------------------------------------------------------
// Files

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("error reading " + path.string());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("error writing " + path.string());
}

// ---------------------------------------------------------------------------
// Netpbm P5 / P6, maxval 255

namespace detail {

struct PnmHeader {
  int width;
  int height;
  std::size_t data_offset;
};

inline PnmHeader parse_pnm_header(std::span<const std::uint8_t> data, char kind) {
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) -> PnmHeader {
    throw DecodeError(pos, "malformed P" + std::string(1, kind) + " header: " + why);
  };
  if (data.size() < 2 || data[0] != 'P' || data[1] != static_cast<std::uint8_t>(kind)) {
    return fail("expected magic P" + std::string(1, kind));
  }
  pos = 2;
  const auto next_number = [&]() -> long {
    // Whitespace and '#' comments may separate header fields.
    for (;;) {
      if (pos >= data.size()) fail("unexpected end of header");
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(data[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (!std::isdigit(data[pos])) fail("expected a decimal number");
    long v = 0;
    while (pos < data.size() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos] - '0');
      if (v > (1L << 24)) fail("number too large");
      ++pos;
    }
    return v;
  };
  const long width = next_number();
  const long height = next_number();
  const long maxval = next_number();
  if (width < 1 || height < 1) fail("dimensions must be positive");
  if (maxval != 255) fail("maxval " + std::to_string(maxval) + " unsupported, only 255");
  if (pos >= data.size() || !std::isspace(data[pos])) fail("missing whitespace after maxval");
  ++pos;
  return {static_cast<int>(width), static_cast<int>(height), pos};
}

}  // namespace detail

inline ColorImage decode_ppm(std::span<const std::uint8_t> data) {
  const auto h = detail::parse_pnm_header(data, '6');
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  if (data.size() - h.data_offset < 3 * n) {
    throw DecodeError(data.size(), "truncated PPM pixel data");
  }
  std::array<std::vector<Sample>, 3> c;
  for (auto& v : c) v.resize(n);
  const std::uint8_t* px = data.data() + h.data_offset;
  for (std::size_t i = 0; i < n; ++i) {
    c[0][i] = px[3 * i];
    c[1][i] = px[3 * i + 1];
    c[2][i] = px[3 * i + 2];
  }
  return ColorImage::rgb(Plane::make(h.width, h.height, kPrimaryBounds, std::move(c[0])),
                         Plane::make(h.width, h.height, kPrimaryBounds, std::move(c[1])),
                         Plane::make(h.width, h.height, kPrimaryBounds, std::move(c[2])));
}

inline std::vector<std::uint8_t> encode_ppm(const ColorImage& img) {
  for (const Plane& p : img.planes()) {
    if (!kPrimaryBounds.contains(p.bounds())) {
      throw Error("PPM output needs samples in [0, 255]; got roles " +
                  roles_to_string(img.roles()));
    }
  }
  const std::string header =
      "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * img.pixel_count());
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    for (const Plane& p : img.planes()) out.push_back(static_cast<std::uint8_t>(p.samples()[i]));
  }
  return out;
}

inline ColorImage read_ppm(const std::filesystem::path& path) {
  try {
    return decode_ppm(read_file(path));
  } catch (const DecodeError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

inline void write_ppm(const ColorImage& img, const std::filesystem::path& path) {
  write_file(path, encode_ppm(img));
}

inline Plane decode_pgm(std::span<const std::uint8_t> data) {
  const auto h = detail::parse_pnm_header(data, '5');
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  if (data.size() - h.data_offset < n) throw DecodeError(data.size(), "truncated PGM pixel data");
  std::vector<Sample> s(data.begin() + static_cast<std::ptrdiff_t>(h.data_offset),
                        data.begin() + static_cast<std::ptrdiff_t>(h.data_offset + n));
  return Plane::make(h.width, h.height, kPrimaryBounds, std::move(s));
}

inline std::vector<std::uint8_t> encode_pgm(const Plane& p) {
  if (!kPrimaryBounds.contains(p.bounds())) throw Error("PGM output needs samples in [0, 255]");
  const std::string header =
      "P5\n" + std::to_string(p.width()) + " " + std::to_string(p.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (Sample s : p.samples()) out.push_back(static_cast<std::uint8_t>(s));
  return out;
}

inline Plane read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const DecodeError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

inline void write_pgm(const Plane& p, const std::filesystem::path& path) {
  write_file(path, encode_pgm(p));
}

// ---------------------------------------------------------------------------
// Transform descriptor, 7 bytes:
//   kind u8 | dg mode u8 | dg weight u16 | db mode u8 | db weight u16
// Weights are 0 for slots without a filter.

inline void write_descriptor(ByteWriter& w, const TransformDescriptor& d) {
  w.u8(static_cast<std::uint8_t>(d.kind()));
  for (const SlotTransform* slot : {&d.dg(), &d.db()}) {
    w.u8(static_cast<std::uint8_t>(slot->mode()));
    w.u16(static_cast<std::uint16_t>(slot->filter() ? slot->filter()->weight() : 0));
  }
}

inline TransformDescriptor read_descriptor(ByteReader& r) {
  const std::size_t start = r.offset();
  const std::uint8_t kind = r.u8();
  SlotTransform slots[2] = {SlotTransform::none(), SlotTransform::none()};
  for (auto& slot : slots) {
    const std::uint8_t mode = r.u8();
    const std::uint16_t weight = r.u16();
    if (mode > 2) throw DecodeError(r.offset() - 3, "unknown slot mode");
    if (mode == 2) {
      if (!FilterSpec::valid_weight(weight)) {
        throw DecodeError(r.offset() - 2, "invalid filter weight " + std::to_string(weight));
      }
      slot = SlotTransform::denoised(FilterSpec(weight));
    } else {
      if (weight != 0) throw DecodeError(r.offset() - 2, "weight given for unfiltered slot");
      slot = mode == 1 ? SlotTransform::difference() : SlotTransform::none();
    }
  }
  if (kind == static_cast<std::uint8_t>(TransformKind::rct)) {
    if (!(slots[0] == SlotTransform::none() && slots[1] == SlotTransform::none())) {
      throw DecodeError(start, "RCT descriptor with slot choices");
    }
    return TransformDescriptor::rct();
  }
  const TransformDescriptor d = TransformDescriptor::per_slot(slots[0], slots[1]);
  if (static_cast<std::uint8_t>(d.kind()) != kind) {
    throw DecodeError(start, "descriptor kind does not match its slots");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Planar file: "RDLS1" | descriptor | 3 x (role u8, min i16, max i16,
// width u32, height u32) | samples as i16, plane after plane, row-major.

inline std::vector<std::uint8_t> encode_planar(const ColorImage& img, const TransformDescriptor& d) {
  if (img.roles() != d.output_roles()) {
    throw Error("image roles " + roles_to_string(img.roles()) + " do not match descriptor " +
                d.describe());
  }
  ByteWriter w;
  w.text("RDLS1");
  write_descriptor(w, d);
  for (std::size_t i = 0; i < 3; ++i) {
    const Plane& p = img.plane(i);
    w.u8(static_cast<std::uint8_t>(img.role(i)));
    w.i16(p.bounds().min);
    w.i16(p.bounds().max);
    w.u32(static_cast<std::uint32_t>(p.width()));
    w.u32(static_cast<std::uint32_t>(p.height()));
  }
  for (const Plane& p : img.planes()) {
    for (Sample s : p.samples()) w.i16(s);
  }
  return w.take();
}

inline std::pair<ColorImage, TransformDescriptor> decode_planar(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  r.expect_text("RDLS", "a planar RDLS file");
  const std::uint8_t version = r.u8();
  if (version != '1') throw DecodeError(4, "unsupported planar file version");
  const TransformDescriptor d = read_descriptor(r);

  struct PlaneHeader {
    Role role;
    Bounds bounds;
    std::uint32_t width, height;
  };
  std::array<PlaneHeader, 3> headers{};
  for (auto& h : headers) {
    const std::size_t at = r.offset();
    const auto role = role_from_code(r.u8());
    if (!role) throw DecodeError(at, "unknown role tag");
    h.role = *role;
    h.bounds.min = r.i16();
    h.bounds.max = r.i16();
    h.width = r.u32();
    h.height = r.u32();
    if (h.bounds.min > h.bounds.max) throw DecodeError(at + 1, "empty sample bounds");
    if (h.width == 0 || h.height == 0 || h.width != headers[0].width ||
        h.height != headers[0].height) {
      throw DecodeError(at + 5, "inconsistent plane dimensions");
    }
  }
  const Roles roles{headers[0].role, headers[1].role, headers[2].role};
  if (roles != d.output_roles()) {
    throw DecodeError(5, "plane roles " + roles_to_string(roles) + " do not match descriptor " +
                             d.describe());
  }
  const std::uint64_t n = std::uint64_t{headers[0].width} * headers[0].height;
  if (r.remaining() != 3 * n * 2) {
    throw DecodeError(r.offset(), "sample data has " + std::to_string(r.remaining()) +
                                      " bytes, expected " + std::to_string(3 * n * 2));
  }
  std::vector<Plane> planes;
  for (const auto& h : headers) {
    std::vector<Sample> s(static_cast<std::size_t>(n));
    for (auto& v : s) v = r.i16();
    try {
      planes.push_back(Plane::make(static_cast<int>(h.width), static_cast<int>(h.height), h.bounds,
                                   std::move(s)));
    } catch (const Error& e) {
      throw DecodeError(r.offset(), e.what());
    }
  }
  try {
    return {ColorImage({planes[0], planes[1], planes[2]}, roles), d};
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError(5, e.what());
  }
}

inline void write_planar(const ColorImage& img, const TransformDescriptor& d,
                         const std::filesystem::path& path) {
  write_file(path, encode_planar(img, d));
}

inline std::pair<ColorImage, TransformDescriptor> read_planar(const std::filesystem::path& path) {
  try {
    return decode_planar(read_file(path));
  } catch (const DecodeError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Dataset preparation

// RGGB mosaic to RGB at half resolution: R and B come from single
// subpixels, G is the mean of the two green subpixels (ties away from zero).
inline ColorImage bayer_rggb_to_rgb(const Plane& mosaic) {
  if (mosaic.width() % 2 || mosaic.height() % 2) {
    throw Error("Bayer mosaic needs even dimensions, got " + std::to_string(mosaic.width()) +
                "x" + std::to_string(mosaic.height()));
  }
  if (!kPrimaryBounds.contains(mosaic.bounds())) throw Error("Bayer mosaic must be 8-bit");
  const int w = mosaic.width() / 2;
  const int h = mosaic.height() / 2;
  std::array<std::vector<Sample>, 3> c;
  for (auto& v : c) v.reserve(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      c[0].push_back(mosaic.at(2 * x, 2 * y));
      c[1].push_back(static_cast<Sample>(
          round_div(std::int64_t{mosaic.at(2 * x + 1, 2 * y)} + mosaic.at(2 * x, 2 * y + 1), 2)));
      c[2].push_back(mosaic.at(2 * x + 1, 2 * y + 1));
    }
  }
  return ColorImage::rgb(Plane::make(w, h, kPrimaryBounds, std::move(c[0])),
                         Plane::make(w, h, kPrimaryBounds, std::move(c[1])),
                         Plane::make(w, h, kPrimaryBounds, std::move(c[2])));
}

// Each output pixel is the rounded mean of a 3x3 block. Rows and columns
// beyond the last full block are dropped.
inline Plane reduce3x(const Plane& p) {
  const int w = p.width() / 3;
  const int h = p.height() / 3;
  if (w == 0 || h == 0) {
    throw Error("reduce3x: " + std::to_string(p.width()) + "x" + std::to_string(p.height()) +
                " plane is smaller than one 3x3 block");
  }
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t sum = 0;
      for (int dy = 0; dy < 3; ++dy) {
        for (int dx = 0; dx < 3; ++dx) sum += p.at(3 * x + dx, 3 * y + dy);
      }
      out.push_back(static_cast<Sample>(round_div(sum, 9)));
    }
  }
  return Plane::make(w, h, p.bounds(), std::move(out));
}

inline ColorImage reduce3x(const ColorImage& img) {
  return ColorImage({reduce3x(img.plane(0)), reduce3x(img.plane(1)), reduce3x(img.plane(2))},
                    img.roles());
}

// Standard normal deviates from std::mt19937_64 via the Box-Muller
// transform. Uniforms take the top 53 bits of each 64-bit draw; both values
// of every pair are used.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;  // (0, 1]
    const double u2 = static_cast<double>(engine_() >> 11) * kScale;        // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// Adds independent white Gaussian noise to R, G and B (drawn in that order,
// raster order within a plane), rounds half away from zero and clamps to
// [0, 255].
inline ColorImage add_awgn(const ColorImage& rgb, double sigma_r, double sigma_g, double sigma_b,
                           std::uint64_t seed) {
  if (!rgb.is_rgb()) throw Error("add_awgn needs an RGB image");
  const double sigmas[3] = {sigma_r, sigma_g, sigma_b};
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw Error("noise sigma must be finite and >= 0");
  }
  GaussianSource gauss(seed);
  std::array<std::vector<Sample>, 3> c;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto src = rgb.plane(k).samples();
    c[k].resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double v = std::round(src[i] + sigmas[k] * gauss.next());
      c[k][i] = static_cast<Sample>(std::clamp(v, 0.0, 255.0));
    }
  }
  const int w = rgb.width();
  const int h = rgb.height();
  return ColorImage::rgb(Plane::make(w, h, kPrimaryBounds, std::move(c[0])),
                         Plane::make(w, h, kPrimaryBounds, std::move(c[1])),
                         Plane::make(w, h, kPrimaryBounds, std::move(c[2])));
}

}  // namespace rdls

#endif  // RDLS_IMAGEIO_HPP_
