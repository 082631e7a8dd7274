#ifndef EVENTSCORE_ERRORS_HPP
#define EVENTSCORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eventscore {

// Error categories map 1:1 onto CLI exit codes:
// Config -> 1, Corpus -> 2, Backend and Protocol -> 3.
enum class ErrorKind {
    Config,
    Corpus,
    Backend,
    Protocol,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& message) : Error(ErrorKind::Config, message) {}
};

struct CorpusError : Error {
    explicit CorpusError(const std::string& message) : Error(ErrorKind::Corpus, message) {}
};

struct BackendError : Error {
    explicit BackendError(const std::string& message) : Error(ErrorKind::Backend, message) {}
};

struct ProtocolError : Error {
    explicit ProtocolError(const std::string& message) : Error(ErrorKind::Protocol, message) {}
};

}  // namespace eventscore

#endif  // EVENTSCORE_ERRORS_HPP
