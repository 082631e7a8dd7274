// Test adapter speaking the pipeline's wire protocol over stdio or HTTP.
// Modes:
//   lexicon  answer with the default lexicon (default)
//   fixed    always answer --label/--score
//   silent   handshake, then swallow requests
//   shuffle  answer requests in reversed pairs (out-of-order delivery)
//   crash    handshake, then exit after the first request

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "eventscore/lexicon.hpp"
#include "eventscore/sentiment.hpp"

namespace {

using nlohmann::json;

struct MockOptions {
    std::string mode = "lexicon";
    std::string label = "POS";
    double score = 0.91;
    int http_port = 0;  // 0 = stdio
};

json handshake_line() {
    return {{"ready", true}, {"backend", "mock"}, {"version", "1.0"}};
}

json respond(const MockOptions& options, const json& request) {
    json response = {{"id", request.value("id", "")}};
    if (options.mode == "fixed") {
        response["label"] = options.label;
        response["score"] = options.score;
        return response;
    }
    const std::string text = request.value("text", "");
    const auto result =
        eventscore::lexicon_analyze(eventscore::default_lexicon(), text);
    response["label"] = std::string(eventscore::to_string(result.label));
    response["score"] = result.intensity;
    return response;
}

int run_stdio(const MockOptions& options) {
    std::cout << handshake_line().dump() << '\n' << std::flush;

    std::vector<json> held;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        json request = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (!request.is_object()) continue;

        if (options.mode == "silent") continue;
        if (options.mode == "crash") return 0;
        if (options.mode == "shuffle") {
            held.push_back(request);
            if (held.size() == 2) {
                std::cout << respond(options, held[1]).dump() << '\n';
                std::cout << respond(options, held[0]).dump() << '\n' << std::flush;
                held.clear();
            }
            continue;
        }
        std::cout << respond(options, request).dump() << '\n' << std::flush;
    }
    for (const auto& request : held) {
        std::cout << respond(options, request).dump() << '\n' << std::flush;
    }
    return 0;
}

int run_http(const MockOptions& options) {
    httplib::Server server;
    server.Get("/ready", [&](const httplib::Request&, httplib::Response& res) {
        res.set_content(handshake_line().dump(), "application/json");
    });
    server.Post("/analyze", [&](const httplib::Request& req, httplib::Response& res) {
        if (options.mode == "silent") {
            std::this_thread::sleep_for(std::chrono::hours(1));
        }
        json request = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
        res.set_content(respond(options, request).dump(), "application/json");
    });
    if (!server.listen("127.0.0.1", options.http_port)) {
        std::cerr << "mock_adapter: cannot listen on port " << options.http_port << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    MockOptions options;
    CLI::App app{"Mock sentiment adapter for protocol tests"};
    app.add_option("--mode", options.mode)
        ->check(CLI::IsMember({"lexicon", "fixed", "silent", "shuffle", "crash"}));
    app.add_option("--label", options.label);
    app.add_option("--score", options.score);
    app.add_option("--http", options.http_port, "Serve HTTP on this port instead of stdio");
    CLI11_PARSE(app, argc, argv);

    if (options.http_port > 0) return run_http(options);
    return run_stdio(options);
}
