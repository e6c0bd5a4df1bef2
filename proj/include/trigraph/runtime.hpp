#ifndef TRIGRAPH_RUNTIME_HPP
#define TRIGRAPH_RUNTIME_HPP

#include <condition_variable>
#include <coroutine>
#include <cstdint>
#include <deque>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "trigraph/graph.hpp"

namespace trigraph::runtime {

/// Interleaved: all ranks share one thread; a round-robin scheduler
/// resumes each rank at its suspension points, so every run of the same
/// program is bit-identical. Concurrent: one worker thread per rank with
/// blocking inboxes. Both modes satisfy the same delivery contract
/// (reliable, lossless, per-sender FIFO).
enum class ExecMode { Interleaved, Concurrent };

enum class MsgKind { Data, Control };

/// Payload shapes a data message can carry.
enum class DataTag { NeighborList, Request, Tally };

struct Message {
  MsgKind kind = MsgKind::Control;
  int src = 0;
  DataTag tag = DataTag::NeighborList;
  NodeId node = 0;                    // source node v, or the requested node
  std::vector<NodeId> nodes;          // neighbor list, or tally node IDs
  std::vector<std::uint64_t> counts;  // tally values (Tally only)

  static Message control(int src) { return Message{MsgKind::Control, src}; }
  static Message neighbor_list(int src, NodeId v, std::vector<NodeId> nbrs) {
    Message m{MsgKind::Data, src, DataTag::NeighborList, v, std::move(nbrs)};
    return m;
  }
  static Message request(int src, NodeId u) {
    return Message{MsgKind::Data, src, DataTag::Request, u};
  }
};

struct DeadlockError : std::runtime_error {
  DeadlockError() : std::runtime_error("all ranks blocked with empty inboxes") {}
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankCounters {
  std::uint64_t data_sent = 0;
  std::uint64_t data_recv = 0;
  std::uint64_t control_sent = 0;
  std::uint64_t control_recv = 0;
};

class RankContext;

/// Coroutine handle type for a rank program.
class RankTask {
 public:
  struct promise_type {
    std::exception_ptr error;

    RankTask get_return_object() {
      return RankTask{std::coroutine_handle<promise_type>::from_promise(*this)};
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_void() {}
    void unhandled_exception() { error = std::current_exception(); }
  };

  using Handle = std::coroutine_handle<promise_type>;

  RankTask() = default;
  explicit RankTask(Handle h) : h_(h) {}
  RankTask(RankTask&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  RankTask& operator=(RankTask&& o) noexcept {
    if (this != &o) {
      if (h_) h_.destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  RankTask(const RankTask&) = delete;
  RankTask& operator=(const RankTask&) = delete;
  ~RankTask() {
    if (h_) h_.destroy();
  }

  Handle handle() const { return h_; }

 private:
  Handle h_;
};

namespace detail {

enum class RankState { Runnable, RecvBlocked, BarrierBlocked, Done };

struct Mesh {
  ExecMode mode;
  std::size_t p;
  std::vector<std::deque<Message>> inbox;
  std::vector<RankState> state;
  std::vector<std::uint64_t> barrier_wait_gen;
  std::uint64_t barrier_gen = 0;
  std::size_t barrier_count = 0;
  std::size_t blocked = 0;  // concurrent mode only
  std::size_t done = 0;     // concurrent mode only
  bool deadlock = false;
  std::mutex mu;
  std::condition_variable cv;

  Mesh(ExecMode mode_, std::size_t p_)
      : mode(mode_), p(p_), inbox(p_), state(p_, RankState::Runnable),
        barrier_wait_gen(p_, 0) {}

  // Caller holds mu (concurrent) or is the only thread (interleaved).
  void check_deadlock_locked() {
    if (blocked + done < p || done == p) return;
    for (std::size_t r = 0; r < p; ++r) {
      if (state[r] == RankState::RecvBlocked && !inbox[r].empty()) return;
      // A rank whose barrier already released is runnable, merely not
      // rescheduled yet.
      if (state[r] == RankState::BarrierBlocked && barrier_gen > barrier_wait_gen[r])
        return;
    }
    deadlock = true;
    cv.notify_all();
  }
};

}  // namespace detail

/// Per-rank endpoint: message passing plus collectives. Owned by exactly
/// one executing rank; cross-rank interaction goes through the mesh.
class RankContext {
 public:
  int rank() const { return rank_; }
  int ranks() const { return static_cast<int>(mesh_->p); }

  RankCounters counters;

  /// Enqueues a message for dst. Delivery is reliable and per-sender
  /// ordered. Sending to self or out of range is an error.
  void send(int dst, Message m) {
    if (dst == rank_) throw std::invalid_argument("send: dst == self");
    if (dst < 0 || dst >= ranks()) throw std::invalid_argument("send: dst out of range");
    m.src = rank_;
    if (m.kind == MsgKind::Data) ++counters.data_sent;
    else ++counters.control_sent;
    std::lock_guard lk(mesh_->mu);
    mesh_->inbox[static_cast<std::size_t>(dst)].push_back(std::move(m));
    if (mesh_->mode == ExecMode::Concurrent) mesh_->cv.notify_all();
  }

  /// One control message to every other rank.
  void broadcast_control() {
    for (int j = 0; j < ranks(); ++j)
      if (j != rank_) send(j, Message::control(rank_));
  }

  /// Removes and returns all currently queued messages (non-blocking).
  std::vector<Message> drain() {
    std::lock_guard lk(mesh_->mu);
    auto& q = mesh_->inbox[static_cast<std::size_t>(rank_)];
    std::vector<Message> out(std::make_move_iterator(q.begin()),
                             std::make_move_iterator(q.end()));
    q.clear();
    for (const Message& m : out) tally_recv(m);
    return out;
  }

  struct RecvAwaiter {
    RankContext* ctx;
    Message msg;

    bool await_ready() {
      auto* mesh = ctx->mesh_;
      auto& q = mesh->inbox[static_cast<std::size_t>(ctx->rank_)];
      // Interleaved pops in await_resume so both the ready and the
      // resumed-after-suspension paths share one dequeue.
      if (mesh->mode == ExecMode::Interleaved) return !q.empty();
      std::unique_lock lk(mesh->mu);
      if (q.empty()) {
        mesh->state[static_cast<std::size_t>(ctx->rank_)] = detail::RankState::RecvBlocked;
        ++mesh->blocked;
        mesh->check_deadlock_locked();
        mesh->cv.wait(lk, [&] { return mesh->deadlock || !q.empty(); });
        --mesh->blocked;
        mesh->state[static_cast<std::size_t>(ctx->rank_)] = detail::RankState::Runnable;
        if (mesh->deadlock && q.empty()) throw DeadlockError{};
      }
      msg = std::move(q.front());
      q.pop_front();
      ctx->tally_recv(msg);
      return true;
    }
    void await_suspend(std::coroutine_handle<>) {
      ctx->mesh_->state[static_cast<std::size_t>(ctx->rank_)] =
          detail::RankState::RecvBlocked;
    }
    Message await_resume() {
      auto* mesh = ctx->mesh_;
      if (mesh->mode == ExecMode::Interleaved) {
        auto& q = mesh->inbox[static_cast<std::size_t>(ctx->rank_)];
        if (q.empty()) throw DeadlockError{};
        msg = std::move(q.front());
        q.pop_front();
        ctx->tally_recv(msg);
      }
      return std::move(msg);
    }
  };

  /// Blocking receive of the next message.
  RecvAwaiter recv() { return RecvAwaiter{this}; }

  struct YieldAwaiter {
    RankContext* ctx;
    bool await_ready() { return ctx->mesh_->mode == ExecMode::Concurrent; }
    void await_suspend(std::coroutine_handle<>) {}
    void await_resume() {
      if (ctx->mesh_->deadlock) throw DeadlockError{};
    }
  };

  /// Scheduling point: in interleaved mode hands control to the next rank.
  YieldAwaiter yield() { return YieldAwaiter{this}; }

  struct BarrierAwaiter {
    RankContext* ctx;

    bool await_ready() {
      auto* mesh = ctx->mesh_;
      if (mesh->mode == ExecMode::Interleaved) {
        if (++mesh->barrier_count == mesh->p) {
          mesh->barrier_count = 0;
          ++mesh->barrier_gen;
          return true;
        }
        mesh->barrier_wait_gen[static_cast<std::size_t>(ctx->rank_)] = mesh->barrier_gen;
        return false;
      }
      std::unique_lock lk(mesh->mu);
      if (++mesh->barrier_count == mesh->p) {
        mesh->barrier_count = 0;
        ++mesh->barrier_gen;
        mesh->cv.notify_all();
        return true;
      }
      std::uint64_t my_gen = mesh->barrier_gen;
      mesh->barrier_wait_gen[static_cast<std::size_t>(ctx->rank_)] = my_gen;
      mesh->state[static_cast<std::size_t>(ctx->rank_)] = detail::RankState::BarrierBlocked;
      ++mesh->blocked;
      mesh->check_deadlock_locked();
      mesh->cv.wait(lk, [&] { return mesh->deadlock || mesh->barrier_gen > my_gen; });
      --mesh->blocked;
      mesh->state[static_cast<std::size_t>(ctx->rank_)] = detail::RankState::Runnable;
      if (mesh->deadlock && mesh->barrier_gen == my_gen) throw DeadlockError{};
      return true;
    }
    void await_suspend(std::coroutine_handle<>) {
      ctx->mesh_->state[static_cast<std::size_t>(ctx->rank_)] =
          detail::RankState::BarrierBlocked;
    }
    void await_resume() {
      auto* mesh = ctx->mesh_;
      if (mesh->mode == ExecMode::Interleaved && mesh->deadlock) throw DeadlockError{};
    }
  };

  /// Rendezvous over all p ranks; messages sent before the barrier are
  /// visible to drain() after it.
  BarrierAwaiter barrier() { return BarrierAwaiter{this}; }

 private:
  template <class Body>
  friend std::vector<RankCounters> run_ranks(std::size_t, ExecMode, Body&&);

  void tally_recv(const Message& m) {
    if (m.kind == MsgKind::Data) ++counters.data_recv;
    else ++counters.control_recv;
  }

  detail::Mesh* mesh_ = nullptr;
  int rank_ = 0;
};

/// Exact integer sum of per-rank values at the designated root.
inline std::uint64_t reduce_sum(std::span<const std::uint64_t> values) {
  return std::accumulate(values.begin(), values.end(), std::uint64_t{0});
}

/// Runs p copies of a rank program to completion. Body is a callable
/// (RankContext&) -> RankTask. Throws DeadlockError if every rank is
/// blocked with an empty inbox, otherwise rethrows the first rank error.
/// Returns per-rank message counters.
template <class Body>
std::vector<RankCounters> run_ranks(std::size_t p, ExecMode mode, Body&& body) {
  detail::Mesh mesh(mode, p);
  std::vector<RankContext> ctxs(p);
  std::vector<RankTask> tasks;
  tasks.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    ctxs[i].mesh_ = &mesh;
    ctxs[i].rank_ = static_cast<int>(i);
    tasks.push_back(body(ctxs[i]));
  }

  std::exception_ptr first_error;
  bool saw_deadlock = false;
  auto note_error = [&](std::exception_ptr e) {
    if (!e) return;
    try {
      std::rethrow_exception(e);
    } catch (const DeadlockError&) {
      saw_deadlock = true;
      return;  // keep the more specific rank error, if any
    } catch (...) {
    }
    if (!first_error) first_error = e;
  };

  if (mode == ExecMode::Interleaved) {
    using detail::RankState;
    auto& st = mesh.state;
    while (true) {
      bool progress = false;
      std::size_t done = 0;
      for (std::size_t i = 0; i < p; ++i) {
        if (st[i] == RankState::Done) {
          ++done;
          continue;
        }
        bool ready =
            st[i] == RankState::Runnable ||
            (st[i] == RankState::RecvBlocked && !mesh.inbox[i].empty()) ||
            (st[i] == RankState::BarrierBlocked &&
             mesh.barrier_gen > mesh.barrier_wait_gen[i]);
        if (!ready) continue;
        st[i] = RankState::Runnable;
        auto h = tasks[i].handle();
        h.resume();
        progress = true;
        if (h.done()) {
          st[i] = RankState::Done;
          note_error(h.promise().error);
          ++done;
        }
      }
      if (done == p) break;
      if (!progress) {
        mesh.deadlock = true;
        for (std::size_t i = 0; i < p; ++i) {
          if (st[i] == RankState::Done) continue;
          auto h = tasks[i].handle();
          while (!h.done()) h.resume();  // awaiters throw DeadlockError
          st[i] = RankState::Done;
          note_error(h.promise().error);
        }
        break;
      }
    }
  } else {
    std::vector<std::thread> workers;
    workers.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      workers.emplace_back([&, i] {
        auto h = tasks[i].handle();
        h.resume();  // runs to completion; awaiters block, never suspend
        std::lock_guard lk(mesh.mu);
        mesh.state[i] = detail::RankState::Done;
        ++mesh.done;
        mesh.check_deadlock_locked();
      });
    }
    for (auto& w : workers) w.join();
    for (std::size_t i = 0; i < p; ++i) note_error(tasks[i].handle().promise().error);
  }

  if (first_error) std::rethrow_exception(first_error);
  if (mesh.deadlock || saw_deadlock) throw DeadlockError{};

  std::vector<RankCounters> out;
  out.reserve(p);
  for (auto& c : ctxs) out.push_back(c.counters);
  return out;
}

}  // namespace trigraph::runtime

#endif  // TRIGRAPH_RUNTIME_HPP
