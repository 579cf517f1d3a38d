#pragma once

#include <filesystem>
#include <iosfwd>

#include "pixelneat/framebuffer.hpp"

namespace pixelneat {

// Binary P6, maxval 255.
void write_ppm(std::ostream& out, const Framebuffer& frame);
void write_ppm(const std::filesystem::path& path, const Framebuffer& frame);
// Throws FormatError on anything other than a well-formed P6 with maxval 255.
Framebuffer read_ppm(std::istream& in);
Framebuffer read_ppm(const std::filesystem::path& path);

}  // namespace pixelneat
