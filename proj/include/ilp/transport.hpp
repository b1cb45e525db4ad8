#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ilp/shaper.hpp"
#include "ilp/wire.hpp"

namespace ilp {

// Live binding of the shaping core to a TCP byte stream.
//
// A Sender owns one connection and one sending loop. The loop repeatedly
// takes a tick from the shaper, sleeps the sampled delay, and writes the
// record; cover traffic flows from start_shaping() on, whether or not the
// application ever sends. send() and close() may be called from any thread;
// they synchronize with the loop through one lock. Padding and cover bytes
// come from OS randomness so they are indistinguishable from ciphertext; the
// seed governs only the (delay, size) schedule.
//
// Nagle coalescing is disabled so each record maps to one write and the
// per-record timing survives onto the wire.

enum class LoopStatus { NotStarted, Running, Draining, Closed };

struct WriteLogEntry {
    std::chrono::steady_clock::time_point write_time;
    double sampled_delay = 0;  // the d the loop waited before this write
    size_t wire_bytes = 0;     // 7 + shaped_len
};

class Sender {
public:
    // Connects to host:port (connect errors carry the endpoint). The sending
    // loop is not started yet; messages queue until start_shaping().
    Sender(const std::string& host, uint16_t port, ShaperConfig config);
    ~Sender();

    Sender(const Sender&) = delete;
    Sender& operator=(const Sender&) = delete;

    // Launches the sending loop; call once, before relying on cover traffic.
    void start_shaping();

    // Queues msg for transmission and returns immediately.
    void send(std::vector<uint8_t> msg);

    // Blocks until the queue drains, the stream-end record is written, and
    // the connection is shut down. Idempotent; propagates a loop write error.
    void close();

    LoopStatus status() const;

    // Wall-clock write schedule, for diagnostics and timing checks; complete
    // once close() returns.
    std::vector<WriteLogEntry> write_log() const;

private:
    void run_loop();
    void write_record(const ShapedRecord& record);

    mutable std::mutex mutex_;
    Shaper shaper_;
    int fd_ = -1;
    LoopStatus status_ = LoopStatus::NotStarted;
    std::thread loop_;
    std::exception_ptr loop_error_;
    std::vector<WriteLogEntry> write_log_;
    bool closed_ = false;
};

// Accepts one shaped connection per accept() call.
class Listener {
public:
    // Binds and listens on the given port; port 0 picks an ephemeral port,
    // readable via port().
    explicit Listener(uint16_t port, const std::string& bind_address = "0.0.0.0");
    ~Listener();

    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    uint16_t port() const { return port_; }

    class Receiver accept();

private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

// Single-consumer message reader over one accepted connection.
class Receiver {
public:
    explicit Receiver(int fd);
    ~Receiver();

    Receiver(Receiver&& other) noexcept;
    Receiver& operator=(Receiver&&) = delete;
    Receiver(const Receiver&) = delete;
    Receiver& operator=(const Receiver&) = delete;

    // Blocks until the next complete application message arrives (cover
    // records are consumed silently). Returns nullopt after the stream-end
    // record; raises TruncatedStream if the peer vanishes mid-stream.
    std::optional<std::vector<uint8_t>> recv();

private:
    int fd_ = -1;
    Reassembler reassembler_;
    bool finished_ = false;
};

}  // namespace ilp
