#include "tubestyle/runtime/image_io.hpp"

#include <fstream>
#include <string>

namespace tubestyle::runtime {
namespace {

void write_file(const Bytes& bytes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace

Bytes encode_ppm(const FrameTile& tile) {
    const std::string header = "P6\n" + std::to_string(tile.width) + " " + std::to_string(tile.height) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.reserve(header.size() + tile.pixel_count() * 3);
    for (const auto& c : tile.color) {
        out.push_back(c.r);
        out.push_back(c.g);
        out.push_back(c.b);
    }
    return out;
}

Bytes encode_depth_dump(const FrameTile& tile) {
    Bytes out;
    out.reserve(kDepthHeaderBytes + tile.pixel_count() * 4);
    ByteWriter w(out);
    for (char ch : {'D', 'P', 'T', 'H'}) {
        w.u8(static_cast<std::uint8_t>(ch));
    }
    w.u32(tile.width);
    w.u32(tile.height);
    w.u32(0);
    for (float d : tile.depth) {
        w.f32(d);
    }
    return out;
}

void export_image(const FrameTile& tile, const std::filesystem::path& path) { write_file(encode_ppm(tile), path); }

void export_depth(const FrameTile& tile, const std::filesystem::path& path) {
    write_file(encode_depth_dump(tile), path);
}

}  // namespace tubestyle::runtime
