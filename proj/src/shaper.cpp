#include "ilp/shaper.hpp"

#include <cassert>
#include <cstring>
#include <string>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

// Independent sub-streams derived from one user-facing seed.
uint64_t derive_seed(uint64_t seed, uint64_t lane) {
    uint64_t state = seed;
    uint64_t out = 0;
    for (uint64_t i = 0; i <= lane; ++i) out = splitmix64(state);
    return out;
}

}  // namespace

Shaper::Shaper(ShaperConfig config, PayloadFill fill)
    : config_(std::move(config)),
      fill_(fill),
      schedule_rng_(derive_seed(config_.rng_seed, 0)),
      payload_rng_(derive_seed(config_.rng_seed, 1)) {
    config_.validate();
}

void Shaper::fill_random(std::span<uint8_t> out) {
    if (fill_ == PayloadFill::OsRandom) {
        os_random_fill(out);
    } else {
        payload_rng_.fill(out);
    }
}

void Shaper::check_queue_accounting() const {
#ifndef NDEBUG
    uint64_t total = 0;
    for (const auto& m : queue_) total += m.size();
    assert(total - head_offset_ == queued_bytes_ && "queue byte accounting out of sync");
#endif
}

void Shaper::enqueue(std::vector<uint8_t> msg) {
    if (closing_) {
        raise(ErrorKind::ClosedSender, "enqueue after close");
    }
    if (config_.max_queue_bytes &&
        queued_bytes_ + msg.size() > *config_.max_queue_bytes) {
        raise(ErrorKind::QueueFull,
              "queued " + std::to_string(queued_bytes_) + " + message " +
                  std::to_string(msg.size()) + " exceeds bound " +
                  std::to_string(*config_.max_queue_bytes));
    }
    queued_bytes_ += msg.size();
    queue_.push_back(std::move(msg));
    check_queue_accounting();
}

TickOutput Shaper::tick() {
    if (end_emitted_) {
        raise(ErrorKind::ClosedSender, "tick after the stream-end record");
    }

    TickOutput out;
    out.delay_before = sample_delay(config_.delay_dist, schedule_rng_);
    const uint16_t x = sample_size(config_.size_dist, schedule_rng_);

    RecoveryHeader& h = out.record.header;
    h.shaped_len = x;
    h.seq = seq_++;
    out.record.payload.resize(x);

    if (!queue_.empty()) {
        h.record_type = RecordType::Data;
        std::vector<uint8_t>& head = queue_.front();
        const size_t remaining = head.size() - head_offset_;
        if (remaining <= x) {
            // Whole (rest of the) message fits: emit it padded to x bytes.
            h.real_len = static_cast<uint16_t>(remaining);
            std::memcpy(out.record.payload.data(), head.data() + head_offset_, remaining);
            fill_random(std::span(out.record.payload).subspan(remaining));
            queued_bytes_ -= remaining;
            head_offset_ = 0;
            queue_.pop_front();
        } else {
            // Emit the first x bytes; the remainder stays at the queue head.
            h.real_len = x;
            h.more_fragments = true;
            std::memcpy(out.record.payload.data(), head.data() + head_offset_, x);
            head_offset_ += x;
            queued_bytes_ -= x;
        }
    } else if (!closing_) {
        h.record_type = RecordType::Cover;
        fill_random(out.record.payload);
    } else {
        h.record_type = RecordType::Data;
        h.stream_end = true;
        h.real_len = 0;
        fill_random(out.record.payload);
        out.end_of_stream = true;
        end_emitted_ = true;
    }
    check_queue_accounting();
    return out;
}

void Shaper::begin_close() { closing_ = true; }

std::optional<std::vector<uint8_t>> Reassembler::feed(const ShapedRecord& record) {
    if (finished_) {
        raise(ErrorKind::TruncatedStream, "record after the stream-end record");
    }
    const RecoveryHeader& h = record.header;
    if (record.payload.size() != h.shaped_len) {
        raise(ErrorKind::MalformedHeader, "record payload does not match shaped_len");
    }
    if (h.record_type == RecordType::Cover) {
        return std::nullopt;
    }
    if (h.stream_end) {
        if (h.real_len != 0 || h.more_fragments) {
            raise(ErrorKind::MalformedHeader,
                  "stream-end record must carry real_len 0 and no fragment flag");
        }
        if (assembling_) {
            raise(ErrorKind::TruncatedStream, "stream ended mid-message");
        }
        finished_ = true;
        return std::nullopt;
    }
    if (buffer_.size() + h.real_len > cap_) {
        raise(ErrorKind::MessageTooLarge,
              "message exceeds reassembly cap of " + std::to_string(cap_) + " bytes");
    }
    buffer_.insert(buffer_.end(), record.payload.begin(), record.payload.begin() + h.real_len);
    if (h.more_fragments) {
        assembling_ = true;
        return std::nullopt;
    }
    assembling_ = false;
    std::vector<uint8_t> message = std::move(buffer_);
    buffer_.clear();
    return message;
}

void Reassembler::check_complete() const {
    if (!finished_) {
        raise(ErrorKind::TruncatedStream,
              assembling_ ? "input ended mid-message" : "input ended without the stream-end record");
    }
}

std::vector<std::vector<uint8_t>> reassemble(std::span<const ShapedRecord> records,
                                             uint64_t max_message_bytes) {
    Reassembler r(max_message_bytes);
    std::vector<std::vector<uint8_t>> messages;
    for (const auto& record : records) {
        if (auto msg = r.feed(record)) {
            messages.push_back(std::move(*msg));
        }
        if (r.finished()) break;
    }
    r.check_complete();
    return messages;
}

}  // namespace ilp
