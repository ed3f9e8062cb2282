#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tubestyle/ranksort.hpp"
#include "tubestyle/runtime/channel.hpp"
#include "tubestyle/runtime/wire.hpp"

namespace tubestyle::runtime {

using ByteChannel = Channel<SharedBytes>;

inline SharedBytes share(Bytes bytes) { return std::make_shared<const Bytes>(std::move(bytes)); }

// A worker reported failure (or the master's own partition failed) mid-frame.
class FrameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised inside a worker context when Shutdown arrives while it waits on the master.
class ShutdownRequested : public std::exception {
public:
    const char* what() const noexcept override { return "shutdown requested"; }
};

// Worker side of one sort cycle: upload the locally sorted cells, then block
// until the master's hash index for this round arrives.
HashIndex worker_sort_exchange(std::uint8_t round, std::uint16_t workerId, std::span<const DepthCell> sortedCells,
                               ByteChannel& inbox, ByteChannel& toMaster);

// Master side of one sort cycle: merges its own sorted cells with each worker
// upload on arrival, builds the hash index, and broadcasts it to every worker
// outbox (the master keeps its own copy instead of sending to itself).
class MasterSortExchange {
public:
    const HashIndex& run(std::uint8_t round, std::span<const DepthCell> ownSortedCells, ByteChannel& inbox,
                         std::span<ByteChannel* const> workerOutboxes);

    const HashIndex& index() const { return index_; }
    // Worker ids in the order their uploads were merged during the last run.
    const std::vector<std::uint16_t>& arrival_order() const { return arrivals_; }

private:
    RankMerger merger_;
    HashIndex index_;
    std::vector<std::uint16_t> arrivals_;
};

}  // namespace tubestyle::runtime
