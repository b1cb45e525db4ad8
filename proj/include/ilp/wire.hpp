#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ilp {

// Record framing for the shaped byte stream.
//
// Every on-wire record is a fixed 7-byte recovery header followed by exactly
// `shaped_len` payload bytes, so the observable size of a record depends only
// on the sampled payload size. Header layout (big-endian lengths):
//
//   byte 0    flags: bit0 = record type (1 Data, 0 Cover)
//                    bit1 = more fragments follow for this message
//                    bit2 = stream end (clean shutdown marker)
//                    bits 3-7 reserved, must be zero
//   bytes 1-2 shaped_len  (payload byte count; >= 1)
//   bytes 3-4 real_len    (application bytes at the payload start; 0 for Cover)
//   bytes 5-6 seq         (wrapping per-connection record counter)
//
// The receiver uses real_len to strip padding, the type bit to discard cover
// records, and more_fragments to reassemble fragmented messages.

inline constexpr size_t kHeaderSize = 7;

inline constexpr uint8_t kFlagData = 0x01;
inline constexpr uint8_t kFlagMoreFragments = 0x02;
inline constexpr uint8_t kFlagStreamEnd = 0x04;
inline constexpr uint8_t kFlagReservedMask = 0xF8;

enum class RecordType : uint8_t { Cover = 0, Data = 1 };

struct RecoveryHeader {
    RecordType record_type = RecordType::Cover;
    bool more_fragments = false;
    bool stream_end = false;
    uint16_t shaped_len = 0;
    uint16_t real_len = 0;
    uint16_t seq = 0;

    bool operator==(const RecoveryHeader&) const = default;
};

struct ShapedRecord {
    RecoveryHeader header;
    std::vector<uint8_t> payload;  // length == header.shaped_len

    size_t wire_size() const { return kHeaderSize + payload.size(); }
};

// Throws Error(MalformedHeader) if the header violates its invariants:
// real_len <= shaped_len, shaped_len >= 1, Cover implies real_len == 0 and
// more_fragments == false.
std::array<uint8_t, kHeaderSize> encode_header(const RecoveryHeader& header);

// Inverse of encode_header on the first 7 bytes. Rejects reserved flag bits
// and any invariant violation; never coerces.
RecoveryHeader decode_header(std::span<const uint8_t> bytes);

std::vector<uint8_t> encode_record(const ShapedRecord& record);

// Minimal pull interface for record framing; read returns the number of
// bytes produced, 0 meaning end of stream.
class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual size_t read(std::span<uint8_t> out) = 0;
};

class MemorySource final : public ByteSource {
public:
    explicit MemorySource(std::vector<uint8_t> data) : data_(std::move(data)) {}

    size_t read(std::span<uint8_t> out) override;

private:
    std::vector<uint8_t> data_;
    size_t pos_ = 0;
};

// Reads one full record (header plus shaped_len payload bytes). Returns
// nullopt only when the source is exhausted exactly at a record boundary.
// A source that ends mid-header or mid-payload raises TruncatedStream; a
// malformed header raises MalformedHeader (framing cannot resynchronize).
std::optional<ShapedRecord> read_record(ByteSource& source);

}  // namespace ilp
