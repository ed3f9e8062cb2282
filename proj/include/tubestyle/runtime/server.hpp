#pragma once

// Frame-streaming service over WebSocket.
//
// Inbound (text, JSON):
//   {"type":"rotate","dx":D,"dy":D}                 D in [-1, 1]
//   {"type":"mapping", "map":"size,color" | [...], "radius":[min,max],
//    "nearColor":[r,g,b], "farColor":[r,g,b], "valueRange":[min,max],
//    "alphaRange":[min,max], "orientation":"near-max"|"near-min"}
//                                                   every field but type is optional
//   {"type":"resize","w":W,"h":H}
// Outbound:
//   binary: u32 frameId, u32 width, u32 height (little-endian), then RGBA8 rows
//   text:   {"type":"stats","frameId","frameMs","sortMs","workers","sortRounds"}
//   text:   {"type":"error","message":...} for rejected input; the connection stays open
//
// A frame is pushed when a client connects and after each batch of accepted
// input. Input arriving while a frame renders is folded into the next frame.

#include <cstdint>
#include <memory>
#include <string>

#include "tubestyle/runtime/engine.hpp"
#include "tubestyle/runtime/wire.hpp"

namespace tubestyle::runtime {

struct ServeOptions {
    std::string address = "127.0.0.1";
    std::uint16_t port = 8080;  // 0 picks an ephemeral port
    std::uint32_t maxDimension = 8192;
};

// Applies one inbound JSON control message to the engine state. Returns an
// empty string on success, otherwise the error text to send back.
std::string apply_control_message(Engine& engine, const std::string& text, std::uint32_t maxDimension = 8192);

Bytes encode_stream_frame(std::uint32_t frameId, const FrameTile& image);
std::string encode_stats_json(const FrameStats& stats);

class FrameServer {
public:
    FrameServer(Engine& engine, ServeOptions options);
    ~FrameServer();

    FrameServer(const FrameServer&) = delete;
    FrameServer& operator=(const FrameServer&) = delete;

    std::uint16_t port() const;
    // Blocks until stop() is called.
    void run();
    // Safe to call from any thread.
    void stop();

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

// serve forever on the given port.
void serve_frames(Engine& engine, const ServeOptions& options);

}  // namespace tubestyle::runtime
