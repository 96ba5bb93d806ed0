#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace svis {

// Malformed input text: CSV/JSON tables, threshold strings, state files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition on otherwise well-formed data:
// unknown attribute, universe mismatch, inconsistent mapping, ...
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Collector for non-fatal diagnostics (e.g. out-of-domain value sets,
// non-covering relations in lax mode). Null sink drops them.
using WarningSink = std::function<void(const std::string&)>;

inline void warn(const WarningSink& sink, std::string message) {
    if (sink) sink(std::move(message));
}

}  // namespace svis
