#include "ilp/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

void set_nodelay(int fd) {
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

std::string errno_text() { return std::strerror(errno); }

int connect_stream(const std::string& host, uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    const std::string endpoint = host + ":" + service;
    const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &result);
    if (rc != 0) {
        raise(ErrorKind::ConnectError, endpoint + ": " + gai_strerror(rc));
    }
    int fd = -1;
    int last_errno = ECONNREFUSED;
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        last_errno = errno;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(result);
    if (fd < 0) {
        errno = last_errno;
        raise(ErrorKind::ConnectError, endpoint + ": " + errno_text());
    }
    set_nodelay(fd);
    return fd;
}

// Pull interface over a connected socket.
class FdSource final : public ByteSource {
public:
    explicit FdSource(int fd) : fd_(fd) {}

    size_t read(std::span<uint8_t> out) override {
        for (;;) {
            const ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
            if (n >= 0) return static_cast<size_t>(n);
            if (errno == EINTR) continue;
            raise(ErrorKind::IoError, std::string("recv: ") + errno_text());
        }
    }

private:
    int fd_;
};

}  // namespace

Sender::Sender(const std::string& host, uint16_t port, ShaperConfig config)
    : shaper_(std::move(config), PayloadFill::OsRandom), fd_(connect_stream(host, port)) {}

Sender::~Sender() {
    try {
        close();
    } catch (...) {
        // Destruction must not throw; close() errors are reachable via an
        // explicit close() call.
    }
}

void Sender::start_shaping() {
    std::lock_guard lock(mutex_);
    if (status_ != LoopStatus::NotStarted) {
        raise(ErrorKind::AlreadyStarted, "start_shaping called twice");
    }
    status_ = LoopStatus::Running;
    loop_ = std::thread([this] { run_loop(); });
}

void Sender::send(std::vector<uint8_t> msg) {
    std::lock_guard lock(mutex_);
    if (loop_error_) std::rethrow_exception(loop_error_);
    if (closed_ || shaper_.closing()) {
        raise(ErrorKind::ClosedSender, "send after close");
    }
    shaper_.enqueue(std::move(msg));
}

void Sender::write_record(const ShapedRecord& record) {
    const auto bytes = encode_record(record);
    size_t off = 0;
    while (off < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            raise(ErrorKind::IoError, std::string("send: ") + errno_text());
        }
        off += static_cast<size_t>(n);
    }
}

void Sender::run_loop() {
    try {
        for (;;) {
            TickOutput out;
            {
                std::lock_guard lock(mutex_);
                out = shaper_.tick();
            }
            std::this_thread::sleep_for(std::chrono::duration<double>(out.delay_before));
            const auto now = std::chrono::steady_clock::now();
            write_record(out.record);
            {
                std::lock_guard lock(mutex_);
                write_log_.push_back(
                    WriteLogEntry{now, out.delay_before, out.record.wire_size()});
            }
            if (out.end_of_stream) break;
        }
    } catch (...) {
        std::lock_guard lock(mutex_);
        loop_error_ = std::current_exception();
        status_ = LoopStatus::Closed;
    }
}

void Sender::close() {
    bool run_inline = false;
    {
        std::lock_guard lock(mutex_);
        if (closed_) return;
        closed_ = true;
        shaper_.begin_close();
        if (status_ == LoopStatus::Running) {
            status_ = LoopStatus::Draining;
        } else if (status_ == LoopStatus::NotStarted) {
            // No loop yet: drain synchronously so queued messages and the
            // stream-end record still reach the peer.
            run_inline = true;
        }
    }
    if (run_inline) {
        run_loop();
    } else if (loop_.joinable()) {
        loop_.join();
    }
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
    std::lock_guard lock(mutex_);
    status_ = LoopStatus::Closed;
    if (loop_error_) std::rethrow_exception(loop_error_);
}

LoopStatus Sender::status() const {
    std::lock_guard lock(mutex_);
    return status_;
}

std::vector<WriteLogEntry> Sender::write_log() const {
    std::lock_guard lock(mutex_);
    return write_log_;
}

Listener::Listener(uint16_t port, const std::string& bind_address) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) {
        raise(ErrorKind::ConnectError, "socket: " + errno_text());
    }
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        raise(ErrorKind::ConnectError, "bad bind address " + bind_address);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
        ::listen(fd_, 16) != 0) {
        const std::string detail = errno_text();
        ::close(fd_);
        raise(ErrorKind::ConnectError,
              bind_address + ":" + std::to_string(port) + ": " + detail);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::~Listener() {
    if (fd_ >= 0) ::close(fd_);
}

Receiver Listener::accept() {
    for (;;) {
        const int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0) {
            set_nodelay(fd);
            return Receiver(fd);
        }
        if (errno == EINTR) continue;
        raise(ErrorKind::ConnectError, "accept: " + errno_text());
    }
}

Receiver::Receiver(int fd) : fd_(fd) {}

Receiver::Receiver(Receiver&& other) noexcept
    : fd_(other.fd_), reassembler_(std::move(other.reassembler_)), finished_(other.finished_) {
    other.fd_ = -1;
}

Receiver::~Receiver() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<std::vector<uint8_t>> Receiver::recv() {
    if (finished_) return std::nullopt;
    FdSource source(fd_);
    for (;;) {
        auto record = read_record(source);
        if (!record) {
            // finished_ was false, so a clean EOF still means the peer
            // vanished without the in-band stream-end marker.
            raise(ErrorKind::TruncatedStream, "connection closed without stream end");
        }
        if (auto msg = reassembler_.feed(*record)) {
            return msg;
        }
        if (reassembler_.finished()) {
            finished_ = true;
            return std::nullopt;
        }
    }
}

}  // namespace ilp
