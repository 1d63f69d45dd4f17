#include "tvws/png.hpp"

#include <array>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tvws::png {

namespace {

std::uint32_t crc32(const std::uint8_t* data, std::size_t len, std::uint32_t crc = 0) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t n = 0; n < 256; ++n) {
      std::uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  crc ^= 0xffffffffu;
  for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
  return crc ^ 0xffffffffu;
}

std::uint32_t adler32(const std::vector<std::uint8_t>& data) {
  std::uint32_t a = 1, b = 0;
  for (std::uint8_t byte : data) {
    a = (a + byte) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& payload) {
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  put_u32(out, crc32(out.data() + start, out.size() - start));
}

// zlib stream with stored deflate blocks only.
std::vector<std::uint8_t> zlib_stored(const std::vector<std::uint8_t>& raw) {
  std::vector<std::uint8_t> z;
  z.push_back(0x78);
  z.push_back(0x01);
  constexpr std::size_t kMaxBlock = 65535;
  std::size_t off = 0;
  do {
    const std::size_t n = std::min(kMaxBlock, raw.size() - off);
    const bool final = off + n == raw.size();
    z.push_back(final ? 1 : 0);
    z.push_back(static_cast<std::uint8_t>(n & 0xff));
    z.push_back(static_cast<std::uint8_t>(n >> 8));
    z.push_back(static_cast<std::uint8_t>(~n & 0xff));
    z.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xff));
    z.insert(z.end(), raw.begin() + off, raw.begin() + off + n);
    off += n;
  } while (off < raw.size());
  put_u32(z, adler32(raw));
  return z;
}

}  // namespace

std::vector<std::uint8_t> encode_grayscale(int width, int height,
                                           const std::vector<std::uint8_t>& pixels) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("png: image dimensions must be positive");
  }
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("png: pixel buffer size does not match dimensions");
  }

  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(width));
  put_u32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);  // deflate
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  put_chunk(out, "IHDR", ihdr);

  // Each scanline gets a filter byte (0 = none).
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(height) * (width + 1));
  for (int row = 0; row < height; ++row) {
    raw.push_back(0);
    const std::size_t start = static_cast<std::size_t>(row) * width;
    raw.insert(raw.end(), pixels.begin() + start, pixels.begin() + start + width);
  }
  put_chunk(out, "IDAT", zlib_stored(raw));
  put_chunk(out, "IEND", {});
  return out;
}

void write_grayscale(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& pixels) {
  const std::vector<std::uint8_t> bytes = encode_grayscale(width, height, pixels);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace tvws::png
