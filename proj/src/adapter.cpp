#include "eventscore/adapter.hpp"

#include <csignal>
#include <cstring>
#include <deque>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

using Clock = std::chrono::steady_clock;

AdapterHandshake parse_handshake(const std::string& line) {
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!obj.is_object() || obj.value("ready", false) != true) {
        throw ProtocolError("adapter handshake: expected {\"ready\": true, ...}, got: " + line);
    }
    AdapterHandshake handshake;
    handshake.backend = obj.value("backend", std::string());
    handshake.version = obj.value("version", std::string());
    return handshake;
}

// stdin/stdout pipes around a /bin/sh -c child.
class SubprocessTransport final : public AdapterTransport {
public:
    explicit SubprocessTransport(const std::string& command) {
        std::signal(SIGPIPE, SIG_IGN);

        int to_child[2];
        int from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0) {
            throw BackendError("adapter spawn: pipe() failed: " +
                               std::string(std::strerror(errno)));
        }
        pid_ = fork();
        if (pid_ < 0) {
            throw BackendError("adapter spawn: fork() failed: " +
                               std::string(std::strerror(errno)));
        }
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        write_fd_ = to_child[1];
        read_fd_ = from_child[0];
    }

    ~SubprocessTransport() override {
        if (write_fd_ >= 0) close(write_fd_);
        if (read_fd_ >= 0) close(read_fd_);
        if (pid_ > 0) {
            // Closing stdin asks the adapter to exit; escalate if it lingers.
            int status = 0;
            for (int i = 0; i < 20; ++i) {
                if (waitpid(pid_, &status, WNOHANG) != 0) return;
                usleep(10'000);
            }
            kill(pid_, SIGKILL);
            waitpid(pid_, &status, 0);
        }
    }

    AdapterHandshake handshake(std::chrono::milliseconds timeout) override {
        return parse_handshake(receive(timeout));
    }

    void send(const std::string& request_line) override {
        std::string line = request_line;
        line += '\n';
        std::size_t written = 0;
        while (written < line.size()) {
            const ssize_t n = write(write_fd_, line.data() + written, line.size() - written);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw BackendError("adapter write failed: " +
                                   std::string(std::strerror(errno)));
            }
            written += static_cast<std::size_t>(n);
        }
    }

    std::string receive(std::chrono::milliseconds timeout) override {
        const auto deadline = Clock::now() + timeout;
        while (true) {
            const auto newline = buffer_.find('\n');
            if (newline != std::string::npos) {
                std::string line = buffer_.substr(0, newline);
                buffer_.erase(0, newline + 1);
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                return line;
            }
            const auto remaining =
                std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
            if (remaining.count() <= 0) {
                throw BackendError("adapter timeout: no response within " +
                                   std::to_string(timeout.count()) + " ms");
            }
            pollfd pfd{read_fd_, POLLIN, 0};
            const int rc = poll(&pfd, 1, static_cast<int>(remaining.count()));
            if (rc < 0) {
                if (errno == EINTR) continue;
                throw BackendError("adapter poll failed: " +
                                   std::string(std::strerror(errno)));
            }
            if (rc == 0) {
                throw BackendError("adapter timeout: no response within " +
                                   std::to_string(timeout.count()) + " ms");
            }
            char chunk[4096];
            const ssize_t n = read(read_fd_, chunk, sizeof(chunk));
            if (n < 0) {
                if (errno == EINTR) continue;
                throw BackendError("adapter read failed: " +
                                   std::string(std::strerror(errno)));
            }
            if (n == 0) throw BackendError("adapter closed connection");
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

private:
    pid_t pid_ = -1;
    int write_fd_ = -1;
    int read_fd_ = -1;
    std::string buffer_;
};

// Same protocol over HTTP: GET /ready for the handshake, one POST /analyze
// per request. Requests resolve in submission order.
class HttpTransport final : public AdapterTransport {
public:
    explicit HttpTransport(const std::string& url) {
        auto rest = url;
        const auto scheme_end = rest.find("://");
        const auto path_start = rest.find('/', scheme_end == std::string::npos
                                                   ? 0
                                                   : scheme_end + 3);
        if (path_start != std::string::npos) {
            prefix_ = rest.substr(path_start);
            if (prefix_ == "/") prefix_.clear();
            rest = rest.substr(0, path_start);
        }
        client_ = std::make_unique<httplib::Client>(rest);
        client_->set_connection_timeout(5, 0);
    }

    AdapterHandshake handshake(std::chrono::milliseconds timeout) override {
        set_timeout(timeout);
        auto res = client_->Get(prefix_ + "/ready");
        if (!res) {
            throw BackendError("adapter handshake failed: " + httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw BackendError("adapter handshake failed: HTTP " + std::to_string(res->status));
        }
        return parse_handshake(res->body);
    }

    void send(const std::string& request_line) override { queue_.push_back(request_line); }

    std::string receive(std::chrono::milliseconds timeout) override {
        if (queue_.empty()) throw BackendError("adapter HTTP: receive without pending request");
        set_timeout(timeout);
        const std::string body = std::move(queue_.front());
        queue_.pop_front();
        auto res = client_->Post(prefix_ + "/analyze", body, "application/json");
        if (!res) {
            const auto err = res.error();
            if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
                throw BackendError("adapter timeout: no response within " +
                                   std::to_string(timeout.count()) + " ms");
            }
            throw BackendError("adapter HTTP request failed: " + httplib::to_string(err));
        }
        if (res->status != 200) {
            throw BackendError("adapter HTTP request failed: HTTP " +
                               std::to_string(res->status));
        }
        return res->body;
    }

private:
    void set_timeout(std::chrono::milliseconds timeout) {
        const auto secs = timeout.count() / 1000;
        const auto usecs = (timeout.count() % 1000) * 1000;
        client_->set_read_timeout(secs, usecs);
    }

    std::unique_ptr<httplib::Client> client_;
    std::string prefix_;
    std::deque<std::string> queue_;
};

}  // namespace

std::unique_ptr<AdapterTransport> make_subprocess_transport(const std::string& command) {
    return std::make_unique<SubprocessTransport>(command);
}

std::unique_ptr<AdapterTransport> make_http_transport(const std::string& url) {
    return std::make_unique<HttpTransport>(url);
}

std::unique_ptr<AdapterTransport> make_transport(const std::string& command_or_url) {
    if (command_or_url.rfind("http://", 0) == 0 || command_or_url.rfind("https://", 0) == 0) {
        return make_http_transport(command_or_url);
    }
    return make_subprocess_transport(command_or_url);
}

AdapterBackend::AdapterBackend(std::unique_ptr<AdapterTransport> transport,
                               const AdapterOptions& options)
    : transport_(std::move(transport)), options_(options) {
    handshake_ = transport_->handshake(options_.timeout);
    descriptor_.id = "adapter";
    descriptor_.version = handshake_.version;
    descriptor_.max_chunk_tokens = options_.max_chunk_tokens;
    descriptor_.parallelism = options_.parallelism < 1 ? 1 : options_.parallelism;
}

std::unique_ptr<AdapterBackend> AdapterBackend::connect(const std::string& command_or_url,
                                                        const AdapterOptions& options) {
    return std::make_unique<AdapterBackend>(make_transport(command_or_url), options);
}

std::string AdapterBackend::send_request(std::string_view text) {
    const std::string id = "r" + std::to_string(next_id_++);
    nlohmann::json request = {{"id", id}, {"text", std::string(text)}};
    transport_->send(request.dump());
    awaiting_.insert(id);
    return id;
}

SentimentResult AdapterBackend::await_response(const std::string& id) {
    while (true) {
        if (const auto hit = arrived_.find(id); hit != arrived_.end()) {
            SentimentResult result = hit->second;
            arrived_.erase(hit);
            awaiting_.erase(id);
            return result;
        }
        const std::string line = transport_->receive(options_.timeout);
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string()) {
            throw ProtocolError("adapter response is not an {id, label, score} object: " + line);
        }
        const std::string response_id = obj["id"].get<std::string>();
        if (!awaiting_.count(response_id) || arrived_.count(response_id)) {
            throw ProtocolError("unexpected adapter response id '" + response_id + "'");
        }
        if (!obj.contains("label") || !obj["label"].is_string()) {
            throw ProtocolError("adapter response missing label: " + line);
        }
        if (!obj.contains("score") || !obj["score"].is_number()) {
            throw ProtocolError("adapter response missing numeric score: " + line);
        }
        const double score = obj["score"].get<double>();
        if (!(score >= 0.0 && score <= 1.0)) {
            throw ProtocolError("score_out_of_range: " + std::to_string(score) + " for id '" +
                                response_id + "'");
        }
        SentimentResult result;
        result.label = label_from_string(obj["label"].get<std::string>());
        result.intensity = score;

        if (response_id == id) {
            awaiting_.erase(id);
            return result;
        }
        arrived_.emplace(response_id, result);
    }
}

SentimentResult AdapterBackend::analyze_text(std::string_view text) {
    return await_response(send_request(text));
}

std::vector<SentimentResult> AdapterBackend::analyze_batch(const std::vector<std::string>& texts) {
    const auto window = static_cast<std::size_t>(descriptor_.parallelism);
    std::vector<std::string> ids(texts.size());
    std::vector<SentimentResult> results(texts.size());

    std::size_t sent = 0;
    for (; sent < texts.size() && sent < window; ++sent) ids[sent] = send_request(texts[sent]);
    for (std::size_t k = 0; k < texts.size(); ++k) {
        results[k] = await_response(ids[k]);
        if (sent < texts.size()) {
            ids[sent] = send_request(texts[sent]);
            ++sent;
        }
    }
    return results;
}

}  // namespace eventscore
