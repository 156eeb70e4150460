#include "drg/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drg {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kBackoffExpiry: return "backoff-expiry";
    case EventKind::kRetransmitExpiry: return "retransmit-expiry";
    case EventKind::kPersistenceExpiry: return "persistence-expiry";
    case EventKind::kTxEnd: return "tx-end";
    case EventKind::kRxComplete: return "rx-complete";
    case EventKind::kMobilityTick: return "mobility-tick";
    case EventKind::kMessageOrigination: return "message-origination";
    case EventKind::kSimEnd: return "sim-end";
    case EventKind::kDeferredTx: return "deferred-tx";
    case EventKind::kCount: break;
  }
  return "unknown";
}

bool is_protocol_event(EventKind kind) {
  switch (kind) {
    case EventKind::kBackoffExpiry:
    case EventKind::kRetransmitExpiry:
    case EventKind::kPersistenceExpiry:
    case EventKind::kTxEnd:
    case EventKind::kRxComplete:
    case EventKind::kDeferredTx:
      return true;
    default:
      return false;
  }
}

TimerHandle Engine::schedule(double delay, NodeId target, EventKind kind, Action action) {
  if (!(delay >= 0.0) || !std::isfinite(delay)) {
    throw std::invalid_argument("Engine::schedule: delay must be finite and >= 0");
  }
  const std::uint64_t seq = next_seq_++;
  states_.push_back(State::kPending);
  kinds_.push_back(kind);
  heap_.push_back(Entry{now_ + delay, seq, kind, target, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  ++live_by_kind_[static_cast<std::size_t>(kind)];
  ++live_total_;
  return TimerHandle(seq);
}

bool Engine::cancel(TimerHandle h) {
  if (!h.valid() || h.id() >= next_seq_) return false;
  State& s = state_of(h.id());
  if (s != State::kPending) return false;
  s = State::kCancelled;
  --live_by_kind_[static_cast<std::size_t>(kinds_[h.id() - 1])];
  --live_total_;
  return true;
}

bool Engine::pending(TimerHandle h) const {
  return h.valid() && h.id() < next_seq_ && states_[h.id() - 1] == State::kPending;
}

void Engine::run(double until) {
  if (until < now_) throw std::invalid_argument("Engine::run: until precedes the clock");
  while (!heap_.empty() && heap_.front().time <= until) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    State& s = state_of(e.seq);
    if (s == State::kCancelled) continue;
    s = State::kFired;
    --live_by_kind_[static_cast<std::size_t>(e.kind)];
    --live_total_;
    now_ = e.time;
    ++dispatched_;
    if (tracing_) trace_.push_back({e.time, e.seq, e.kind, e.target});
    e.action();
  }
  now_ = until;
}

std::size_t Engine::pending_protocol_events() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < live_by_kind_.size(); ++k) {
    if (is_protocol_event(static_cast<EventKind>(k))) n += live_by_kind_[k];
  }
  return n;
}

}  // namespace drg
