// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ftsim/errors.hpp"

namespace ftsim {

class SimClock {
public:
    double now() const noexcept { return now_; }

    void advance_to(double t) {
        if (t < now_) throw SchedulingError("clock moved backwards to " + std::to_string(t));
        now_ = t;
    }

private:
    double now_ = 0.0;
};

template <class Payload>
struct SimEvent {
    double time = 0.0;
    std::uint64_t sequence = 0;
    Payload payload;
};

/// Time-ordered queue keyed by (time, insertion sequence). Owns the clock:
/// popping advances it to the event time.
template <class Payload>
class EventQueue {
public:
    using Event = SimEvent<Payload>;

    /// Returns the sequence number assigned to the event.
    std::uint64_t push(double time, Payload payload) {
        if (time < clock_.now()) {
            throw SchedulingError("event at t=" + std::to_string(time) +
                                  " scheduled in the past (now=" + std::to_string(clock_.now()) +
                                  ")");
        }
        const std::uint64_t seq = next_sequence_++;
        heap_.push(Event{time, seq, std::move(payload)});
        return seq;
    }

    /// Empty optional means the simulation has nothing left to do.
    std::optional<Event> pop_next() {
        if (heap_.empty()) return std::nullopt;
        Event e = heap_.top();
        heap_.pop();
        clock_.advance_to(e.time);
        return e;
    }

    const Event* peek() const { return heap_.empty() ? nullptr : &heap_.top(); }

    double now() const noexcept { return clock_.now(); }
    std::size_t size() const noexcept { return heap_.size(); }
    bool empty() const noexcept { return heap_.empty(); }
    std::uint64_t pushed() const noexcept { return next_sequence_; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    SimClock clock_;
    std::uint64_t next_sequence_ = 0;
};

}  // namespace ftsim
