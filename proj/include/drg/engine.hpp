#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "drg/types.hpp"

namespace drg {

enum class EventKind : std::uint8_t {
  kBackoffExpiry,
  kRetransmitExpiry,
  kPersistenceExpiry,
  kTxEnd,
  kRxComplete,
  kMobilityTick,
  kMessageOrigination,
  kSimEnd,
  kDeferredTx,
  kCount,
};

const char* to_string(EventKind kind);

/// True for events that belong to a protocol's per-message machinery.
bool is_protocol_event(EventKind kind);

class TimerHandle {
 public:
  TimerHandle() = default;
  explicit TimerHandle(std::uint64_t id) : id_(id) {}

  bool valid() const { return id_ != 0; }
  std::uint64_t id() const { return id_; }

  friend bool operator==(TimerHandle, TimerHandle) = default;

 private:
  std::uint64_t id_ = 0;
};

struct TraceEntry {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::kSimEnd;
  NodeId target = kNoNode;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Single-threaded discrete-event scheduler. Events are totally ordered by
/// (fire time, insertion sequence).
class Engine {
 public:
  using Action = std::function<void()>;

  double now() const { return now_; }

  /// Throws std::invalid_argument for negative or non-finite delays.
  TimerHandle schedule(double delay, NodeId target, EventKind kind, Action action);

  /// Returns true iff the event was still pending. Idempotent.
  bool cancel(TimerHandle h);

  bool pending(TimerHandle h) const;

  /// Dispatches every event with fire time <= until, then sets the clock to until.
  void run(double until);

  std::size_t pending_count() const { return live_total_; }
  std::size_t pending_count(EventKind kind) const {
    return live_by_kind_[static_cast<std::size_t>(kind)];
  }
  std::size_t pending_protocol_events() const;

  std::uint64_t dispatched() const { return dispatched_; }

  void enable_trace(bool on) { tracing_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  enum class State : std::uint8_t { kPending, kFired, kCancelled };

  struct Entry {
    double time;
    std::uint64_t seq;
    EventKind kind;
    NodeId target;
    Action action;
  };

  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  State& state_of(std::uint64_t seq) { return states_[seq - 1]; }

  double now_ = 0.0;
  std::uint64_t next_seq_ = 1;
  std::uint64_t dispatched_ = 0;
  std::vector<Entry> heap_;
  std::vector<State> states_;
  std::vector<EventKind> kinds_;
  std::array<std::size_t, static_cast<std::size_t>(EventKind::kCount)> live_by_kind_{};
  std::size_t live_total_ = 0;
  bool tracing_ = false;
  std::vector<TraceEntry> trace_;
};

}  // namespace drg
