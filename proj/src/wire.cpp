#include "ilp/wire.hpp"

#include <cstring>
#include <string>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

void check_invariants(const RecoveryHeader& h, ErrorKind kind) {
    if (h.shaped_len == 0) {
        raise(kind, "shaped_len must be >= 1");
    }
    if (h.real_len > h.shaped_len) {
        raise(kind, "real_len " + std::to_string(h.real_len) + " exceeds shaped_len " +
                        std::to_string(h.shaped_len));
    }
    if (h.record_type == RecordType::Cover) {
        if (h.real_len != 0) raise(kind, "cover record with nonzero real_len");
        if (h.more_fragments) raise(kind, "cover record with more_fragments set");
    }
}

void put_u16(uint8_t* out, uint16_t v) {
    out[0] = static_cast<uint8_t>(v >> 8);
    out[1] = static_cast<uint8_t>(v & 0xFF);
}

uint16_t get_u16(const uint8_t* in) {
    return static_cast<uint16_t>((static_cast<uint16_t>(in[0]) << 8) | in[1]);
}

}  // namespace

std::array<uint8_t, kHeaderSize> encode_header(const RecoveryHeader& header) {
    check_invariants(header, ErrorKind::MalformedHeader);
    std::array<uint8_t, kHeaderSize> out{};
    uint8_t flags = 0;
    if (header.record_type == RecordType::Data) flags |= kFlagData;
    if (header.more_fragments) flags |= kFlagMoreFragments;
    if (header.stream_end) flags |= kFlagStreamEnd;
    out[0] = flags;
    put_u16(&out[1], header.shaped_len);
    put_u16(&out[3], header.real_len);
    put_u16(&out[5], header.seq);
    return out;
}

RecoveryHeader decode_header(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) {
        raise(ErrorKind::MalformedHeader, "need at least 7 bytes, got " +
                                              std::to_string(bytes.size()));
    }
    const uint8_t flags = bytes[0];
    if (flags & kFlagReservedMask) {
        raise(ErrorKind::MalformedHeader, "reserved flag bits set");
    }
    RecoveryHeader h;
    h.record_type = (flags & kFlagData) ? RecordType::Data : RecordType::Cover;
    h.more_fragments = (flags & kFlagMoreFragments) != 0;
    h.stream_end = (flags & kFlagStreamEnd) != 0;
    h.shaped_len = get_u16(&bytes[1]);
    h.real_len = get_u16(&bytes[3]);
    h.seq = get_u16(&bytes[5]);
    check_invariants(h, ErrorKind::MalformedHeader);
    return h;
}

std::vector<uint8_t> encode_record(const ShapedRecord& record) {
    if (record.payload.size() != record.header.shaped_len) {
        raise(ErrorKind::MalformedHeader,
              "payload length " + std::to_string(record.payload.size()) +
                  " does not match shaped_len " + std::to_string(record.header.shaped_len));
    }
    auto header = encode_header(record.header);
    std::vector<uint8_t> out;
    out.reserve(kHeaderSize + record.payload.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), record.payload.begin(), record.payload.end());
    return out;
}

size_t MemorySource::read(std::span<uint8_t> out) {
    const size_t n = std::min(out.size(), data_.size() - pos_);
    std::memcpy(out.data(), data_.data() + pos_, n);
    pos_ += n;
    return n;
}

namespace {

// Fills `out` completely; returns bytes actually read (short only at EOF).
size_t read_full(ByteSource& source, std::span<uint8_t> out) {
    size_t got = 0;
    while (got < out.size()) {
        size_t n = source.read(out.subspan(got));
        if (n == 0) break;
        got += n;
    }
    return got;
}

}  // namespace

std::optional<ShapedRecord> read_record(ByteSource& source) {
    std::array<uint8_t, kHeaderSize> head{};
    size_t got = read_full(source, head);
    if (got == 0) return std::nullopt;
    if (got < kHeaderSize) {
        raise(ErrorKind::TruncatedStream,
              "stream ended after " + std::to_string(got) + " of 7 header bytes");
    }
    ShapedRecord record;
    record.header = decode_header(head);
    record.payload.resize(record.header.shaped_len);
    got = read_full(source, record.payload);
    if (got < record.payload.size()) {
        raise(ErrorKind::TruncatedStream,
              "stream ended after " + std::to_string(got) + " of " +
                  std::to_string(record.payload.size()) + " payload bytes");
    }
    return record;
}

}  // namespace ilp
