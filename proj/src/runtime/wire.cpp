#include "tubestyle/runtime/wire.hpp"

#include <bit>
#include <cstring>

namespace tubestyle::runtime {
namespace {

static_assert(sizeof(Rgba8) == 4, "tile color buffers are copied as packed RGBA8");

constexpr std::size_t kCameraPayload = 10 * 8 + 2 * 4;
constexpr std::size_t kMappingPayload = 2 + 12 * 8;

void write_vec(ByteWriter& w, const Vec3& v) {
    w.f64(v.x);
    w.f64(v.y);
    w.f64(v.z);
}

Vec3 read_vec(ByteReader& r) {
    const double x = r.f64();
    const double y = r.f64();
    const double z = r.f64();
    return {x, y, z};
}

void expect_size(std::span<const std::uint8_t> payload, std::size_t want, const char* what) {
    if (payload.size() != want) {
        throw WireError(std::string(what) + " payload has " + std::to_string(payload.size()) + " bytes, expected " +
                        std::to_string(want));
    }
}

Bytes frame_of(MessageKind kind, const Bytes& payload) { return encode_frame(kind, payload); }

}  // namespace

const char* to_string(MessageKind kind) {
    switch (kind) {
        case MessageKind::CameraSync: return "CameraSync";
        case MessageKind::MappingUpdate: return "MappingUpdate";
        case MessageKind::RenderFrame: return "RenderFrame";
        case MessageKind::TileUpload: return "TileUpload";
        case MessageKind::DepthCellsUpload: return "DepthCellsUpload";
        case MessageKind::HashIndexBroadcast: return "HashIndexBroadcast";
        case MessageKind::Shutdown: return "Shutdown";
        case MessageKind::WorkerFailure: return "WorkerFailure";
    }
    return "unknown";
}

void ByteWriter::u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
}

void ByteWriter::u32(std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> s));
    }
}

void ByteWriter::u64(std::uint64_t v) {
    for (int s = 0; s < 64; s += 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> s));
    }
}

void ByteWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteReader::need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
        throw WireError("truncated payload: need " + std::to_string(n) + " bytes, have " +
                        std::to_string(in_.size() - pos_));
    }
}

std::uint8_t ByteReader::u8() {
    need(1);
    return in_[pos_++];
}

std::uint16_t ByteReader::u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(in_[pos_] | (in_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= std::uint32_t(in_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= std::uint64_t(in_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    return v;
}

float ByteReader::f32() { return std::bit_cast<float>(u32()); }
double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
    need(n);
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
}

void ByteReader::expect_end(const char* what) const {
    if (pos_ != in_.size()) {
        throw WireError(std::string(what) + " payload has " + std::to_string(in_.size() - pos_) + " trailing bytes");
    }
}

Bytes encode_frame(MessageKind kind, std::span<const std::uint8_t> payload) {
    if (payload.size() > 0xFFFFFFFFu) {
        throw WireError("payload too large");
    }
    Bytes out;
    out.reserve(kFrameHeaderBytes + payload.size());
    ByteWriter w(out);
    w.u32(static_cast<std::uint32_t>(payload.size()));
    w.u8(static_cast<std::uint8_t>(kind));
    w.raw(payload);
    return out;
}

MessageView view_frame(std::span<const std::uint8_t> frame) {
    ByteReader r(frame);
    const std::uint32_t len = r.u32();
    const std::uint8_t kind = r.u8();
    if (kind < static_cast<std::uint8_t>(MessageKind::CameraSync) ||
        kind > static_cast<std::uint8_t>(MessageKind::WorkerFailure)) {
        throw WireError("unknown message kind " + std::to_string(kind));
    }
    if (r.remaining() != len) {
        throw WireError("length prefix " + std::to_string(len) + " does not match payload of " +
                        std::to_string(r.remaining()) + " bytes");
    }
    return {static_cast<MessageKind>(kind), r.raw(len)};
}

Message decode_frame(std::span<const std::uint8_t> frame) {
    const MessageView view = view_frame(frame);
    return {view.kind, Bytes(view.payload.begin(), view.payload.end())};
}

Bytes encode_camera_sync(const Camera& cam) {
    Bytes p;
    p.reserve(kCameraPayload);
    ByteWriter w(p);
    write_vec(w, cam.position);
    write_vec(w, cam.focal);
    write_vec(w, cam.up);
    w.f64(cam.fovY);
    w.u32(cam.viewport.width);
    w.u32(cam.viewport.height);
    return frame_of(MessageKind::CameraSync, p);
}

Camera decode_camera_sync(std::span<const std::uint8_t> payload) {
    expect_size(payload, kCameraPayload, "CameraSync");
    ByteReader r(payload);
    Camera cam;
    cam.position = read_vec(r);
    cam.focal = read_vec(r);
    cam.up = read_vec(r);
    cam.fovY = r.f64();
    cam.viewport.width = r.u32();
    cam.viewport.height = r.u32();
    return cam;
}

Bytes encode_mapping_update(const MappingSpec& spec) {
    Bytes p;
    p.reserve(kMappingPayload);
    ByteWriter w(p);
    w.u8(spec.enabled.bits());
    w.u8(static_cast<std::uint8_t>(spec.orientation));
    w.f64(spec.radius.min);
    w.f64(spec.radius.max);
    for (double c : spec.nearColor) {
        w.f64(c);
    }
    for (double c : spec.farColor) {
        w.f64(c);
    }
    w.f64(spec.value.min);
    w.f64(spec.value.max);
    w.f64(spec.alpha.min);
    w.f64(spec.alpha.max);
    return frame_of(MessageKind::MappingUpdate, p);
}

MappingSpec decode_mapping_update(std::span<const std::uint8_t> payload) {
    expect_size(payload, kMappingPayload, "MappingUpdate");
    ByteReader r(payload);
    MappingSpec spec;
    const std::uint8_t bits = r.u8();
    if (bits & 0xF0) {
        throw WireError("MappingUpdate has unknown variable bits");
    }
    spec.enabled = VariableSet(bits);
    const std::uint8_t orientation = r.u8();
    if (orientation > 1) {
        throw WireError("MappingUpdate has unknown orientation");
    }
    spec.orientation = static_cast<Orientation>(orientation);
    spec.radius = {r.f64(), r.f64()};
    for (double& c : spec.nearColor) {
        c = r.f64();
    }
    for (double& c : spec.farColor) {
        c = r.f64();
    }
    spec.value = {r.f64(), r.f64()};
    spec.alpha = {r.f64(), r.f64()};
    return spec;
}

Bytes encode_render_frame(std::uint32_t frameId) {
    Bytes p;
    ByteWriter(p).u32(frameId);
    return frame_of(MessageKind::RenderFrame, p);
}

std::uint32_t decode_render_frame(std::span<const std::uint8_t> payload) {
    expect_size(payload, 4, "RenderFrame");
    return ByteReader(payload).u32();
}

Bytes encode_depth_cells(std::uint8_t round, std::uint16_t workerId, std::span<const DepthCell> cells) {
    Bytes p;
    p.reserve(7 + cells.size() * 8);
    ByteWriter w(p);
    w.u8(round);
    w.u16(workerId);
    w.u32(static_cast<std::uint32_t>(cells.size()));
    for (const auto& c : cells) {
        w.f32(c.vd);
        w.u32(c.id);
    }
    return frame_of(MessageKind::DepthCellsUpload, p);
}

Bytes encode_depth_cells(const DepthCellsUpload& msg) { return encode_depth_cells(msg.round, msg.workerId, msg.cells); }

DepthCellsUpload decode_depth_cells(std::span<const std::uint8_t> payload) {
    ByteReader r(payload);
    DepthCellsUpload msg;
    msg.round = r.u8();
    msg.workerId = r.u16();
    const std::uint32_t count = r.u32();
    if (r.remaining() != std::size_t(count) * 8) {
        throw WireError("DepthCellsUpload declares " + std::to_string(count) + " cells but carries " +
                        std::to_string(r.remaining()) + " bytes");
    }
    msg.cells.resize(count);
    for (auto& c : msg.cells) {
        c.vd = r.f32();
        c.id = r.u32();
    }
    return msg;
}

Bytes encode_hash_index(std::uint8_t round, const HashIndex& index) {
    Bytes p;
    p.reserve(5 + index.size() * 4);
    ByteWriter w(p);
    w.u8(round);
    w.u32(static_cast<std::uint32_t>(index.size()));
    for (auto rank : index.ranks) {
        w.u32(rank);
    }
    return frame_of(MessageKind::HashIndexBroadcast, p);
}

HashIndexBroadcast decode_hash_index(std::span<const std::uint8_t> payload) {
    ByteReader r(payload);
    HashIndexBroadcast msg;
    msg.round = r.u8();
    const std::uint32_t count = r.u32();
    if (r.remaining() != std::size_t(count) * 4) {
        throw WireError("HashIndexBroadcast declares " + std::to_string(count) + " ranks but carries " +
                        std::to_string(r.remaining()) + " bytes");
    }
    msg.index.ranks.resize(count);
    for (auto& rank : msg.index.ranks) {
        rank = r.u32();
    }
    return msg;
}

Bytes encode_tile_upload(std::uint16_t workerId, std::uint32_t meshBuilds, const FrameTile& tile) {
    const std::size_t n = tile.pixel_count();
    Bytes p;
    p.reserve(18 + n * 10);
    ByteWriter w(p);
    w.u16(workerId);
    w.u32(meshBuilds);
    w.u32(tile.width);
    w.u32(tile.height);
    w.raw(std::span(&tile.background.r, 4));
    for (const auto& c : tile.color) {
        w.raw(std::span(&c.r, 4));
    }
    for (float d : tile.depth) {
        w.f32(d);
    }
    for (auto prov : tile.provenance) {
        w.u16(prov);
    }
    return frame_of(MessageKind::TileUpload, p);
}

TileUpload decode_tile_upload(std::span<const std::uint8_t> payload) {
    ByteReader r(payload);
    TileUpload msg;
    msg.workerId = r.u16();
    msg.meshBuilds = r.u32();
    const std::uint32_t w = r.u32();
    const std::uint32_t h = r.u32();
    const auto bg = r.raw(4);
    const std::size_t n = std::size_t(w) * h;
    if (r.remaining() != n * 10) {
        throw WireError("TileUpload of " + std::to_string(w) + "x" + std::to_string(h) + " carries " +
                        std::to_string(r.remaining()) + " pixel bytes");
    }
    FrameTile& tile = msg.tile;
    tile.width = w;
    tile.height = h;
    tile.background = {bg[0], bg[1], bg[2], bg[3]};
    tile.color.resize(n);
    tile.depth.resize(n);
    tile.provenance.resize(n);
    const auto colors = r.raw(n * 4);
    std::memcpy(tile.color.data(), colors.data(), n * 4);
    for (auto& d : tile.depth) {
        d = r.f32();
    }
    for (auto& prov : tile.provenance) {
        prov = r.u16();
    }
    return msg;
}

Bytes encode_shutdown() { return encode_frame(MessageKind::Shutdown, {}); }

Bytes encode_worker_failure(const WorkerFailure& msg) {
    Bytes p;
    ByteWriter w(p);
    w.u16(msg.workerId);
    w.u32(static_cast<std::uint32_t>(msg.diagnostic.size()));
    w.raw(std::span(reinterpret_cast<const std::uint8_t*>(msg.diagnostic.data()), msg.diagnostic.size()));
    return frame_of(MessageKind::WorkerFailure, p);
}

WorkerFailure decode_worker_failure(std::span<const std::uint8_t> payload) {
    ByteReader r(payload);
    WorkerFailure msg;
    msg.workerId = r.u16();
    const std::uint32_t len = r.u32();
    const auto text = r.raw(len);
    r.expect_end("WorkerFailure");
    msg.diagnostic.assign(text.begin(), text.end());
    return msg;
}

}  // namespace tubestyle::runtime
