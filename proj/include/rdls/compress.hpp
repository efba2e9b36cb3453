#ifndef RDLS_COMPRESS_HPP_
#define RDLS_COMPRESS_HPP_

// Whole-image compression: transform, then code each plane independently.
//
// Container layout (little-endian):
//   "RDLM" | version u8 | descriptor (7 bytes) | crc32 of the RGB image u32 |
//   3 x (role u8 | length u32 | coded plane)
// The image bitrate follows the per-component convention: the sum of the
// three plane bitrates, each counting its own coded-plane header.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rdls/bytes.hpp"
#include "rdls/codec.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/imageio.hpp"
#include "rdls/select.hpp"
#include "rdls/transforms.hpp"

namespace rdls {

inline constexpr std::uint8_t kContainerVersion = 1;

struct CompressResult {
  std::vector<std::uint8_t> bytes;
  TransformDescriptor descriptor = TransformDescriptor::identity();
  std::array<double, 3> plane_bpp{};
  std::optional<Selection> selection;

  double total_bpp() const { return plane_bpp[0] + plane_bpp[1] + plane_bpp[2]; }
};

namespace detail {

inline std::uint32_t image_crc(const ColorImage& rgb) {
  std::vector<std::uint8_t> raw;
  raw.reserve(3 * rgb.pixel_count());
  for (const Plane& p : rgb.planes()) {
    for (Sample s : p.samples()) raw.push_back(static_cast<std::uint8_t>(s));
  }
  return static_cast<std::uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), raw.data(), static_cast<uInt>(raw.size())));
}

}  // namespace detail

inline CompressResult compress_image(const ColorImage& rgb, const TransformDescriptor& d) {
  if (!rgb.is_rgb()) throw Error("compress_image needs an RGB image");
  const ColorImage transformed = forward_transform(rgb, d);
  CompressResult result;
  result.descriptor = d;
  ByteWriter w;
  w.text("RDLM");
  w.u8(kContainerVersion);
  write_descriptor(w, d);
  w.u32(detail::image_crc(rgb));
  for (std::size_t i = 0; i < 3; ++i) {
    const std::vector<std::uint8_t> coded = encode_plane_bytes(transformed.plane(i));
    result.plane_bpp[i] = bitrate(coded.size(), transformed.pixel_count());
    w.u8(static_cast<std::uint8_t>(transformed.role(i)));
    w.u32(static_cast<std::uint32_t>(coded.size()));
    w.bytes(coded);
  }
  result.bytes = w.take();
  return result;
}

// Picks the transform per slot with the given estimator, then compresses.
inline CompressResult compress_auto(const ColorImage& rgb, Metric metric = Metric::h0_pmed,
                                    SelectionMode mode = SelectionMode::per_slot,
                                    unsigned threads = 1) {
  const Selection sel = select_transform(rgb, metric, mode, threads);
  CompressResult result = compress_image(rgb, sel.descriptor());
  result.selection = sel;
  return result;
}

inline ColorImage decompress_image(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  r.expect_text("RDLM", "a compressed RDLS image");
  const std::uint8_t version = r.u8();
  if (version != kContainerVersion) throw DecodeError(4, "unsupported container version");
  const TransformDescriptor d = read_descriptor(r);
  const std::uint32_t crc = r.u32();
  std::vector<Plane> planes;
  Roles roles{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t at = r.offset();
    const auto role = role_from_code(r.u8());
    if (!role) throw DecodeError(at, "unknown role tag");
    roles[i] = *role;
    const std::uint32_t length = r.u32();
    const std::size_t plane_offset = r.offset();
    planes.push_back(decode_plane_bytes(r.bytes(length), plane_offset));
  }
  if (r.remaining() != 0) throw DecodeError(r.offset(), "trailing bytes after last plane");
  if (roles != d.output_roles()) {
    throw DecodeError(5, "plane roles " + roles_to_string(roles) + " do not match descriptor " +
                             d.describe());
  }
  ColorImage rgb = [&] {
    try {
      return inverse_transform(ColorImage({planes[0], planes[1], planes[2]}, roles), d);
    } catch (const DecodeError&) {
      throw;
    } catch (const Error& e) {
      throw DecodeError(5, e.what());
    }
  }();
  if (detail::image_crc(rgb) != crc) throw DecodeError(12, "image checksum mismatch");
  return rgb;
}

}  // namespace rdls

#endif  // RDLS_COMPRESS_HPP_
