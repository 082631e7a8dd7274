#ifndef EVENTSCORE_ADAPTER_HPP
#define EVENTSCORE_ADAPTER_HPP

#include <chrono>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "eventscore/sentiment.hpp"

namespace eventscore {

// Wire protocol, identical over both transports:
//   handshake  {"ready": true, "backend": <text>, "version": <text>}
//   request    {"id": <text>, "text": <text>}
//   response   {"id": <text>, "label": "POS"|"NEG"|"NEU", "score": [0,1]}
// Responses may arrive out of order; matching is by id.

struct AdapterHandshake {
    std::string backend;
    std::string version;
};

// One transport = one adapter connection. send() enqueues or writes a
// request line; receive() yields the next response (any id) before the
// deadline or throws BackendError.
class AdapterTransport {
public:
    virtual ~AdapterTransport() = default;

    virtual AdapterHandshake handshake(std::chrono::milliseconds timeout) = 0;
    virtual void send(const std::string& request_line) = 0;
    virtual std::string receive(std::chrono::milliseconds timeout) = 0;
};

// Newline-delimited JSON over the stdin/stdout of a spawned subprocess.
// The command runs under /bin/sh -c.
std::unique_ptr<AdapterTransport> make_subprocess_transport(const std::string& command);

// HTTP: handshake is GET /ready, requests are POST /analyze.
std::unique_ptr<AdapterTransport> make_http_transport(const std::string& url);

// Picks the transport from the configuration string: anything starting
// with http:// or https:// is a URL, everything else a shell command.
std::unique_ptr<AdapterTransport> make_transport(const std::string& command_or_url);

struct AdapterOptions {
    std::chrono::milliseconds timeout{30000};
    int parallelism = 4;
    int max_chunk_tokens = 120;
};

class AdapterBackend : public Backend {
public:
    // Performs the handshake; throws BackendError / ProtocolError.
    AdapterBackend(std::unique_ptr<AdapterTransport> transport, const AdapterOptions& options);

    static std::unique_ptr<AdapterBackend> connect(const std::string& command_or_url,
                                                   const AdapterOptions& options = {});

    const BackendDescriptor& descriptor() const override { return descriptor_; }
    SentimentResult analyze_text(std::string_view text) override;

    // Pipelines up to descriptor().parallelism in-flight requests.
    std::vector<SentimentResult> analyze_batch(const std::vector<std::string>& texts) override;

    const AdapterHandshake& handshake() const { return handshake_; }

private:
    std::string send_request(std::string_view text);
    SentimentResult await_response(const std::string& id);

    std::unique_ptr<AdapterTransport> transport_;
    AdapterOptions options_;
    AdapterHandshake handshake_;
    BackendDescriptor descriptor_;
    std::unordered_map<std::string, SentimentResult> arrived_;  // out-of-order stash
    std::set<std::string> awaiting_;                            // ids sent, not yet consumed
    std::uint64_t next_id_ = 0;
};

}  // namespace eventscore

#endif  // EVENTSCORE_ADAPTER_HPP
