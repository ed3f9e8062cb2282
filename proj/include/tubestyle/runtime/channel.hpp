#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

namespace tubestyle::runtime {

// Unbounded FIFO between execution contexts. Ordered and reliable; any number
// of producers, one consumer.
template <typename T>
class Channel {
public:
    void push(T value) {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(value));
        }
        ready_.notify_one();
    }

    T pop() {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [&] { return !queue_.empty(); });
        T value = std::move(queue_.front());
        queue_.pop_front();
        return value;
    }

    std::optional<T> try_pop() {
        std::lock_guard lock(mutex_);
        if (queue_.empty()) {
            return std::nullopt;
        }
        T value = std::move(queue_.front());
        queue_.pop_front();
        return value;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<T> queue_;
};

}  // namespace tubestyle::runtime
