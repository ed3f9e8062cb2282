#pragma once

#include <filesystem>
#include <stdexcept>

#include "tubestyle/raster.hpp"
#include "tubestyle/runtime/wire.hpp"

namespace tubestyle::runtime {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Binary PPM (P6, maxval 255); alpha is dropped.
Bytes encode_ppm(const FrameTile& tile);

// "DPTH", u32 width, u32 height, u32 reserved (0), then width*height float32,
// all little-endian, rows top to bottom.
inline constexpr std::size_t kDepthHeaderBytes = 16;
Bytes encode_depth_dump(const FrameTile& tile);

// Both throw IoError naming the path.
void export_image(const FrameTile& tile, const std::filesystem::path& path);
void export_depth(const FrameTile& tile, const std::filesystem::path& path);

}  // namespace tubestyle::runtime
