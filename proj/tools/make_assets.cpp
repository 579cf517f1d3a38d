// Writes the banner templates the vision side matches against.
#include <filesystem>
#include <iostream>

#include "pixelneat/arena/render.hpp"
#include "pixelneat/ppm.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("assets");
  try {
    fs::create_directories(dir);
    pixelneat::write_ppm(dir / "defeat.ppm", pixelneat::arena::banner_bitmap(pixelneat::arena::Banner::defeat));
    pixelneat::write_ppm(dir / "victory.ppm", pixelneat::arena::banner_bitmap(pixelneat::arena::Banner::victory));
  } catch (const std::exception& e) {
    std::cerr << "make_assets: " << e.what() << '\n';
    return 3;
  }
  std::cout << "wrote " << (dir / "defeat.ppm").string() << " and " << (dir / "victory.ppm").string() << '\n';
  return 0;
}
