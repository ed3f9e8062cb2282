#include "tubestyle/runtime/server.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>

namespace tubestyle::runtime {
namespace {

namespace beast = boost::beast;
namespace websocket = boost::beast::websocket;
namespace net = boost::asio;
using tcp = boost::asio::ip::tcp;
using json = nlohmann::json;

Range read_range(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument(std::string(name) + " must be [min, max]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Rgb read_rgb(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument(std::string(name) + " must be [r, g, b]");
    }
    Rgb c{};
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) {
            throw std::invalid_argument(std::string(name) + " must be [r, g, b]");
        }
        c[i] = j[i].get<double>();
    }
    return c;
}

double read_delta(const json& msg, const char* key) {
    if (!msg.contains(key)) {
        return 0.0;
    }
    if (!msg[key].is_number()) {
        throw std::invalid_argument(std::string(key) + " must be a number");
    }
    const double v = msg[key].get<double>();
    if (!(v >= -1.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(key) + " must lie in [-1, 1]");
    }
    return v;
}

MappingSpec apply_mapping_fields(MappingSpec spec, const json& msg) {
    if (msg.contains("map")) {
        const json& m = msg["map"];
        if (m.is_string()) {
            spec.enabled = parse_variable_set(m.get<std::string>());
        } else if (m.is_array()) {
            std::string joined;
            for (const auto& item : m) {
                if (!item.is_string()) {
                    throw std::invalid_argument("map entries must be strings");
                }
                joined += (joined.empty() ? "" : ",") + item.get<std::string>();
            }
            spec.enabled = parse_variable_set(joined.empty() ? "none" : joined);
        } else {
            throw std::invalid_argument("map must be a string or an array of strings");
        }
    }
    if (msg.contains("radius")) {
        spec.radius = read_range(msg["radius"], "radius");
    }
    if (msg.contains("nearColor")) {
        spec.nearColor = read_rgb(msg["nearColor"], "nearColor");
    }
    if (msg.contains("farColor")) {
        spec.farColor = read_rgb(msg["farColor"], "farColor");
    }
    if (msg.contains("valueRange")) {
        spec.value = read_range(msg["valueRange"], "valueRange");
    }
    if (msg.contains("alphaRange")) {
        spec.alpha = read_range(msg["alphaRange"], "alphaRange");
    }
    if (msg.contains("orientation")) {
        const json& o = msg["orientation"];
        if (o == "near-max") {
            spec.orientation = Orientation::NearIsMax;
        } else if (o == "near-min") {
            spec.orientation = Orientation::NearIsMin;
        } else {
            throw std::invalid_argument("orientation must be near-max or near-min");
        }
    }
    return spec;
}

}  // namespace

std::string apply_control_message(Engine& engine, const std::string& text, std::uint32_t maxDimension) {
    json msg;
    try {
        msg = json::parse(text);
    } catch (const json::parse_error& e) {
        return std::string("malformed JSON: ") + e.what();
    }
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
        return "message must be an object with a string \"type\"";
    }
    const std::string type = msg["type"].get<std::string>();
    try {
        if (type == "rotate") {
            const double dx = read_delta(msg, "dx");
            const double dy = read_delta(msg, "dy");
            engine.rotate(dx, dy);
        } else if (type == "mapping") {
            engine.set_mapping(apply_mapping_fields(engine.mapping(), msg));
        } else if (type == "resize") {
            if (!msg.contains("w") || !msg.contains("h") || !msg["w"].is_number_integer() ||
                !msg["h"].is_number_integer()) {
                return "resize needs integer w and h";
            }
            const auto w = msg["w"].get<std::int64_t>();
            const auto h = msg["h"].get<std::int64_t>();
            if (w < 1 || h < 1 || w > maxDimension || h > maxDimension) {
                return "resize dimensions must lie in [1, " + std::to_string(maxDimension) + "]";
            }
            engine.resize(static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h));
        } else {
            return "unknown message type '" + type + "'";
        }
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

Bytes encode_stream_frame(std::uint32_t frameId, const FrameTile& image) {
    Bytes out;
    out.reserve(12 + image.pixel_count() * 4);
    ByteWriter w(out);
    w.u32(frameId);
    w.u32(image.width);
    w.u32(image.height);
    for (const auto& c : image.color) {
        w.raw(std::span(&c.r, 4));
    }
    return out;
}

std::string encode_stats_json(const FrameStats& stats) {
    return json{{"type", "stats"},
                {"frameId", stats.frameId},
                {"frameMs", stats.frameMs},
                {"sortMs", stats.sortMs},
                {"workers", stats.workers},
                {"sortRounds", stats.sortRounds}}
        .dump();
}

namespace {

struct Outgoing {
    std::shared_ptr<const std::string> data;
    bool binary = false;
};

class Session;

struct Command {
    std::weak_ptr<Session> from;
    std::optional<std::string> text;  // nullopt: a client connected and wants a frame
};

}  // namespace

struct FrameServer::Impl {
    Impl(Engine& e, ServeOptions o) : engine(e), options(std::move(o)), acceptor(ioc) {}

    void enqueue(Command cmd) {
        {
            std::lock_guard lock(mutex);
            pending.push_back(std::move(cmd));
        }
        wake.notify_one();
    }

    void do_accept();
    void render_loop();
    void deliver(const std::shared_ptr<Session>& s, Outgoing out);

    Engine& engine;
    ServeOptions options;
    net::io_context ioc;
    tcp::acceptor acceptor;

    std::mutex mutex;
    std::condition_variable wake;
    std::deque<Command> pending;
    std::vector<std::weak_ptr<Session>> sessions;
    bool stopping = false;
};

namespace {

class Session : public std::enable_shared_from_this<Session> {
public:
    Session(tcp::socket socket, FrameServer::Impl& server) : ws_(std::move(socket)), server_(server) {}

    void start() {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
            if (ec) {
                return;
            }
            self->server_.enqueue({self, std::nullopt});
            self->read();
        });
    }

    // Must run on the io thread.
    void send(Outgoing out) {
        if (closed_) {
            return;
        }
        queue_.push_back(std::move(out));
        if (queue_.size() == 1) {
            write();
        }
    }

    void close() {
        closed_ = true;
        beast::error_code ec;
        beast::get_lowest_layer(ws_).socket().close(ec);
    }

    bool closed() const { return closed_; }
    net::any_io_executor executor() { return ws_.get_executor(); }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->closed_ = true;
                return;
            }
            if (self->ws_.got_text()) {
                self->server_.enqueue({self, beast::buffers_to_string(self->buffer_.data())});
            } else {
                self->send({std::make_shared<const std::string>(
                                json{{"type", "error"}, {"message", "binary input is not accepted"}}.dump()),
                            false});
            }
            self->buffer_.consume(self->buffer_.size());
            self->read();
        });
    }

    void write() {
        const Outgoing& out = queue_.front();
        ws_.binary(out.binary);
        ws_.async_write(net::buffer(*out.data), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->closed_ = true;
                self->queue_.clear();
                return;
            }
            self->queue_.pop_front();
            if (!self->queue_.empty()) {
                self->write();
            }
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<Outgoing> queue_;
    std::atomic<bool> closed_ = false;
    FrameServer::Impl& server_;
};

std::shared_ptr<const std::string> error_json(const std::string& message) {
    return std::make_shared<const std::string>(json{{"type", "error"}, {"message", message}}.dump());
}

}  // namespace

void FrameServer::Impl::deliver(const std::shared_ptr<Session>& s, Outgoing out) {
    net::post(s->executor(), [s, out = std::move(out)]() mutable { s->send(std::move(out)); });
}

void FrameServer::Impl::do_accept() {
    acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
        if (ec) {
            return;
        }
        auto session = std::make_shared<Session>(std::move(socket), *this);
        {
            std::lock_guard lock(mutex);
            std::erase_if(sessions, [](const auto& w) { return w.expired() || w.lock()->closed(); });
            sessions.push_back(session);
        }
        session->start();
        do_accept();
    });
}

void FrameServer::Impl::render_loop() {
    for (;;) {
        std::deque<Command> batch;
        {
            std::unique_lock lock(mutex);
            wake.wait(lock, [&] { return stopping || !pending.empty(); });
            if (stopping) {
                return;
            }
            batch.swap(pending);
        }
        bool wantFrame = false;
        for (auto& cmd : batch) {
            if (!cmd.text) {
                wantFrame = true;
                continue;
            }
            const std::string err = apply_control_message(engine, *cmd.text, options.maxDimension);
            if (err.empty()) {
                wantFrame = true;
            } else if (auto s = cmd.from.lock()) {
                deliver(s, {error_json(err), false});
            }
        }
        if (!wantFrame) {
            continue;
        }

        std::vector<std::shared_ptr<Session>> live;
        {
            std::lock_guard lock(mutex);
            for (const auto& w : sessions) {
                if (auto s = w.lock(); s && !s->closed()) {
                    live.push_back(s);
                }
            }
        }
        try {
            const FrameResult frame = engine.render_frame();
            const Bytes bytes = encode_stream_frame(frame.stats.frameId, frame.image);
            auto binary = std::make_shared<const std::string>(bytes.begin(), bytes.end());
            auto stats = std::make_shared<const std::string>(encode_stats_json(frame.stats));
            for (const auto& s : live) {
                deliver(s, {binary, true});
                deliver(s, {stats, false});
            }
        } catch (const std::exception& e) {
            for (const auto& s : live) {
                deliver(s, {error_json(e.what()), false});
            }
        }
    }
}

FrameServer::FrameServer(Engine& engine, ServeOptions options)
    : impl_(std::make_unique<Impl>(engine, std::move(options))) {
    const tcp::endpoint endpoint(net::ip::make_address(impl_->options.address), impl_->options.port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(net::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen(net::socket_base::max_listen_connections);
}

FrameServer::~FrameServer() { stop(); }

std::uint16_t FrameServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void FrameServer::run() {
    std::thread renderer([this] { impl_->render_loop(); });
    impl_->do_accept();
    impl_->ioc.run();
    {
        std::lock_guard lock(impl_->mutex);
        impl_->stopping = true;
    }
    impl_->wake.notify_all();
    renderer.join();
}

void FrameServer::stop() {
    {
        std::lock_guard lock(impl_->mutex);
        impl_->stopping = true;
    }
    impl_->wake.notify_all();
    impl_->ioc.stop();
}

void serve_frames(Engine& engine, const ServeOptions& options) {
    FrameServer server(engine, options);
    std::clog << "tubestyle: serving frames on ws://" << options.address << ":" << server.port() << "/\n";
    server.run();
}

}  // namespace tubestyle::runtime
