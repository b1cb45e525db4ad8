#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "ilp/distributions.hpp"
#include "ilp/wire.hpp"

namespace ilp {

// Pure, clock-agnostic shaping core. Each tick() samples a delay d and a
// payload size x from the configured distributions and emits exactly one
// record of x payload bytes: the head of the message queue (padded or
// fragmented to x), cover bytes when the queue is empty, or the stream-end
// marker once close has been requested and the queue has drained. The caller
// owns time: it waits delay_before and then transmits the record.
//
// The (delay, size) schedule is a function of (seed, distributions, tick
// count) alone. Scheduling draws and payload-fill draws come from two
// independent streams derived from the seed, so the amount of padding
// consumed by real traffic can never perturb the schedule.

struct TickOutput {
    double delay_before = 0;  // seconds to wait before sending the record
    ShapedRecord record;
    bool end_of_stream = false;  // set exactly when the record carries stream_end
};

enum class PayloadFill {
    Seeded,    // deterministic fill from the seeded stream (simulation/replay)
    OsRandom,  // cryptographic fill (live transport)
};

class Shaper {
public:
    explicit Shaper(ShaperConfig config, PayloadFill fill = PayloadFill::Seeded);

    // Appends msg at the queue tail. Empty messages are allowed and emit a
    // real_len = 0 data record. Throws ClosedSender after begin_close and
    // QueueFull when max_queue_bytes would be exceeded.
    void enqueue(std::vector<uint8_t> msg);

    // One iteration of the shaping loop. Total on valid state; throws
    // ClosedSender only if called again after the stream-end record.
    TickOutput tick();

    // Marks the shaper closing: ticks drain the queue normally, then emit
    // exactly one stream-end record. Idempotent.
    void begin_close();

    bool closing() const { return closing_; }
    bool finished() const { return end_emitted_; }
    uint64_t queued_bytes() const { return queued_bytes_; }
    size_t queued_messages() const { return queue_.size(); }
    uint16_t seq_counter() const { return seq_; }
    const ShaperConfig& config() const { return config_; }

private:
    void fill_random(std::span<uint8_t> out);
    void check_queue_accounting() const;

    ShaperConfig config_;
    PayloadFill fill_;
    Rng schedule_rng_;
    Rng payload_rng_;
    std::deque<std::vector<uint8_t>> queue_;
    size_t head_offset_ = 0;  // consumed prefix of queue_.front() (fragment remainder)
    uint64_t queued_bytes_ = 0;
    uint16_t seq_ = 0;
    bool closing_ = false;
    bool end_emitted_ = false;
};

// Receiver-side inverse: feed records in emission order, collect original
// messages. Cover records are discarded; data records accumulate real_len
// bytes until a record with more_fragments = false completes the message.
inline constexpr uint64_t kDefaultReassemblyCap = 16ull << 20;  // 16 MiB per message

class Reassembler {
public:
    explicit Reassembler(uint64_t max_message_bytes = kDefaultReassemblyCap)
        : cap_(max_message_bytes) {}

    // Returns the completed message when this record finishes one (possibly
    // empty), nullopt otherwise. The stream-end record terminates the
    // sequence without emitting a message; it must arrive in canonical form
    // (data, real_len = 0, no fragments pending) or the stream is treated as
    // corrupt. Throws MessageTooLarge when a message exceeds the cap.
    std::optional<std::vector<uint8_t>> feed(const ShapedRecord& record);

    bool finished() const { return finished_; }

    // Call when the input ends: raises TruncatedStream unless the stream-end
    // record was seen and no partial message is pending.
    void check_complete() const;

private:
    std::vector<uint8_t> buffer_;
    bool assembling_ = false;
    bool finished_ = false;
    uint64_t cap_;
};

// Convenience wrapper over Reassembler for complete in-memory record
// sequences; enforces stream-end termination.
std::vector<std::vector<uint8_t>> reassemble(std::span<const ShapedRecord> records,
                                             uint64_t max_message_bytes = kDefaultReassemblyCap);

}  // namespace ilp
