#ifndef C4STAR_ERRORS_HPP
#define C4STAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace c4star {

/// All recoverable failures carry a stable machine-readable code
/// ("NotSymmetric", "MissingFile", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace c4star

#endif
