#include "tubestyle/runtime/sort_round.hpp"

#include "tubestyle/kernels.hpp"

namespace tubestyle::runtime {

HashIndex worker_sort_exchange(std::uint8_t round, std::uint16_t workerId, std::span<const DepthCell> sortedCells,
                               ByteChannel& inbox, ByteChannel& toMaster) {
    toMaster.push(share(encode_depth_cells(round, workerId, sortedCells)));
    const SharedBytes frame = inbox.pop();
    const MessageView msg = view_frame(*frame);
    if (msg.kind == MessageKind::Shutdown) {
        throw ShutdownRequested();
    }
    if (msg.kind != MessageKind::HashIndexBroadcast) {
        throw WireError(std::string("expected HashIndexBroadcast, got ") + to_string(msg.kind));
    }
    HashIndexBroadcast bcast = decode_hash_index(msg.payload);
    if (bcast.round != round) {
        throw WireError("hash index for round " + std::to_string(bcast.round) + " while waiting for round " +
                        std::to_string(round));
    }
    return std::move(bcast.index);
}

const HashIndex& MasterSortExchange::run(std::uint8_t round, std::span<const DepthCell> ownSortedCells,
                                         ByteChannel& inbox, std::span<ByteChannel* const> workerOutboxes) {
    merger_.reset();
    arrivals_.clear();
    merger_.merge(ownSortedCells);
    for (std::size_t pending = workerOutboxes.size(); pending > 0; --pending) {
        const SharedBytes frame = inbox.pop();
        const MessageView msg = view_frame(*frame);
        if (msg.kind == MessageKind::WorkerFailure) {
            const WorkerFailure failure = decode_worker_failure(msg.payload);
            throw FrameError("worker " + std::to_string(failure.workerId) + " failed: " + failure.diagnostic);
        }
        if (msg.kind != MessageKind::DepthCellsUpload) {
            throw WireError(std::string("expected DepthCellsUpload, got ") + to_string(msg.kind));
        }
        const DepthCellsUpload upload = decode_depth_cells(msg.payload);
        if (upload.round != round) {
            throw WireError("depth cells for round " + std::to_string(upload.round) + " during round " +
                            std::to_string(round));
        }
        merger_.merge(upload.cells);
        arrivals_.push_back(upload.workerId);
    }
    kernels::hash_index_omp(merger_.merged(), index_);
    if (!workerOutboxes.empty()) {
        const SharedBytes bcast = share(encode_hash_index(round, index_));
        for (ByteChannel* out : workerOutboxes) {
            out->push(bcast);
        }
    }
    return index_;
}

}  // namespace tubestyle::runtime
