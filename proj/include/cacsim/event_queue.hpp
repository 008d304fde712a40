#ifndef CACSIM_EVENT_QUEUE_HPP
#define CACSIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <queue>
#include <vector>

namespace cacsim {

// Min-heap of timed events. Ties at equal virtual time break on the
// scheduling sequence number, which makes every run order deterministic.
template <typename Payload>
class EventQueue {
public:
    struct Entry {
        double time;
        std::uint64_t seq;
        Payload payload;
    };

    void schedule(double time, Payload payload) {
        heap_.push(Entry{time, next_seq_++, std::move(payload)});
    }

    bool empty() const { return heap_.empty(); }

    Entry pop() {
        Entry top = heap_.top();
        heap_.pop();
        return top;
    }

    const Entry& peek() const { return heap_.top(); }

private:
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

} // namespace cacsim

#endif
