#pragma once

// Master/worker wire format. Every message is
//
//   u32 payload length | u8 kind | payload
//
// with all multi-byte integers and floats little-endian.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/raster.hpp"
#include "tubestyle/ranksort.hpp"
#include "tubestyle/stylemap.hpp"

namespace tubestyle::runtime {

using Bytes = std::vector<std::uint8_t>;
using SharedBytes = std::shared_ptr<const Bytes>;

enum class MessageKind : std::uint8_t {
    CameraSync = 1,
    MappingUpdate = 2,
    RenderFrame = 3,
    TileUpload = 4,
    DepthCellsUpload = 5,
    HashIndexBroadcast = 6,
    Shutdown = 7,
    WorkerFailure = 8,
};

const char* to_string(MessageKind kind);

class WireError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kFrameHeaderBytes = 5;

class ByteWriter {
public:
    explicit ByteWriter(Bytes& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f32(float v);
    void f64(double v);
    void raw(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

private:
    Bytes& out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    float f32();
    double f64();
    std::span<const std::uint8_t> raw(std::size_t n);

    std::size_t remaining() const { return in_.size() - pos_; }
    // Throws WireError unless every byte was consumed.
    void expect_end(const char* what) const;

private:
    void need(std::size_t n) const;

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

struct Message {
    MessageKind kind = MessageKind::Shutdown;
    Bytes payload;
};

// Non-owning view into an encoded frame.
struct MessageView {
    MessageKind kind = MessageKind::Shutdown;
    std::span<const std::uint8_t> payload;
};

Bytes encode_frame(MessageKind kind, std::span<const std::uint8_t> payload);
// Both validate the length prefix and kind byte.
MessageView view_frame(std::span<const std::uint8_t> frame);
Message decode_frame(std::span<const std::uint8_t> frame);

struct DepthCellsUpload {
    std::uint8_t round = 0;
    std::uint16_t workerId = 0;
    std::vector<DepthCell> cells;
};

struct HashIndexBroadcast {
    std::uint8_t round = 0;
    HashIndex index;
};

struct TileUpload {
    std::uint16_t workerId = 0;
    std::uint32_t meshBuilds = 0;
    FrameTile tile;
};

struct WorkerFailure {
    std::uint16_t workerId = 0;
    std::string diagnostic;
};

Bytes encode_camera_sync(const Camera& cam);
Bytes encode_mapping_update(const MappingSpec& spec);
Bytes encode_render_frame(std::uint32_t frameId);
Bytes encode_depth_cells(const DepthCellsUpload& msg);
Bytes encode_depth_cells(std::uint8_t round, std::uint16_t workerId, std::span<const DepthCell> cells);
Bytes encode_hash_index(std::uint8_t round, const HashIndex& index);
Bytes encode_tile_upload(std::uint16_t workerId, std::uint32_t meshBuilds, const FrameTile& tile);
Bytes encode_shutdown();
Bytes encode_worker_failure(const WorkerFailure& msg);

// Payload decoders; each throws WireError when the payload does not match its schema.
Camera decode_camera_sync(std::span<const std::uint8_t> payload);
MappingSpec decode_mapping_update(std::span<const std::uint8_t> payload);
std::uint32_t decode_render_frame(std::span<const std::uint8_t> payload);
DepthCellsUpload decode_depth_cells(std::span<const std::uint8_t> payload);
HashIndexBroadcast decode_hash_index(std::span<const std::uint8_t> payload);
TileUpload decode_tile_upload(std::span<const std::uint8_t> payload);
WorkerFailure decode_worker_failure(std::span<const std::uint8_t> payload);

}  // namespace tubestyle::runtime
