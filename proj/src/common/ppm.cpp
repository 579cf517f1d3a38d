#include "pixelneat/ppm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "pixelneat/errors.hpp"

namespace pixelneat {

namespace {

int read_header_int(std::istream& in) {
  int c = in.peek();
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else {
      in.get();
    }
    c = in.peek();
  }
  int value = 0;
  if (!(in >> value)) throw FormatError("malformed PPM header");
  return value;
}

}  // namespace

void write_ppm(std::ostream& out, const Framebuffer& frame) {
  out << "P6\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  auto bytes = frame.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_ppm(const std::filesystem::path& path, const Framebuffer& frame) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_ppm(out, frame);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Framebuffer read_ppm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '6')
    throw FormatError("not a binary PPM (P6)");
  const int width = read_header_int(in);
  const int height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (width <= 0 || height <= 0 || width > 16384 || height > 16384)
    throw FormatError("PPM dimensions out of range");
  if (maxval != 255) throw FormatError("PPM maxval must be 255");
  if (!std::isspace(in.get())) throw FormatError("malformed PPM header");
  Framebuffer frame(width, height);
  auto bytes = frame.bytes();
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
    throw FormatError("truncated PPM pixel data");
  return frame;
}

Framebuffer read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_ppm(in);
}

}  // namespace pixelneat
