#include "eventscore/cache.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

#include <openssl/evp.h>

#include <json.hpp>

#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

void append_warning(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

std::optional<SentimentResult> decode_entry(const std::string& text) {
    nlohmann::json entry = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (!entry.is_object() || !entry.contains("label") || !entry.contains("score")) {
        return std::nullopt;
    }
    if (!entry["label"].is_string() || !entry["score"].is_number()) return std::nullopt;
    const std::string label = entry["label"].get<std::string>();
    const double score = entry["score"].get<double>();
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) return std::nullopt;
    SentimentResult result;
    if (label == "POS") {
        result.label = SentimentLabel::Pos;
    } else if (label == "NEG") {
        result.label = SentimentLabel::Neg;
    } else if (label == "NEU") {
        result.label = SentimentLabel::Neu;
    } else {
        return std::nullopt;
    }
    result.intensity = score;
    return result;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_Digest(data.data(), data.size(), digest, &digest_len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0x0F];
    }
    return out;
}

std::string cache_key(const BackendDescriptor& backend, std::string_view text) {
    std::string framed;
    framed.reserve(backend.id.size() + backend.version.size() + text.size() + 32);
    framed += std::to_string(backend.id.size());
    framed += ':';
    framed += backend.id;
    framed += std::to_string(backend.version.size());
    framed += ':';
    framed += backend.version;
    framed += std::to_string(text.size());
    framed += ':';
    framed += text;
    return sha256_hex(framed);
}

ResultCache::ResultCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path ResultCache::entry_path(const std::string& key) const {
    return directory_ / (key + ".json");
}

std::optional<SentimentResult> ResultCache::lookup(const std::string& key,
                                                   std::vector<std::string>* warnings) {
    std::error_code ec;
    const auto path = entry_path(key);
    if (!std::filesystem::exists(path, ec)) return std::nullopt;

    std::ifstream input(path, std::ios::binary);
    if (!input) {
        append_warning(warnings, "cache: cannot read " + path.string() + ", analyzing uncached");
        return std::nullopt;
    }
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    auto decoded = decode_entry(text);
    if (!decoded) {
        append_warning(warnings, "cache: corrupted entry " + key + ", recomputing");
        return std::nullopt;
    }
    return decoded;
}

void ResultCache::store(const std::string& key, const SentimentResult& result,
                        std::vector<std::string>* warnings) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) {
        append_warning(warnings, "cache: cannot create " + directory_.string() +
                                     " (" + ec.message() + "), result not cached");
        return;
    }

    nlohmann::json entry = {
        {"label", std::string(to_string(result.label))},
        {"score", result.intensity},
    };
    const auto path = entry_path(key);
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream output(tmp, std::ios::binary | std::ios::trunc);
        if (!output) {
            append_warning(warnings, "cache: cannot write " + tmp.string() +
                                         ", result not cached");
            return;
        }
        output << entry.dump() << '\n';
        if (!output.good()) {
            append_warning(warnings, "cache: write failed for " + tmp.string());
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    // Rename is atomic, so concurrent writers to one key never interleave.
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        append_warning(warnings, "cache: rename failed for " + path.string() + " (" +
                                     ec.message() + ")");
        std::filesystem::remove(tmp, ec);
    }
}

SentimentResult cached_analyze(ResultCache& cache, Backend& backend, std::string_view text,
                               std::vector<std::string>* warnings) {
    const std::string key = cache_key(backend.descriptor(), text);
    if (auto hit = cache.lookup(key, warnings)) return *hit;
    const SentimentResult result = analyze(backend, text);
    cache.store(key, result, warnings);
    return result;
}

}  // namespace eventscore
