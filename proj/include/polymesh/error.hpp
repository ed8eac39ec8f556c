#ifndef POLYMESH_ERROR_HPP
#define POLYMESH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polymesh {

/// Library failure carrying a short machine-readable code ("arity",
/// "lambda_too_small", "rank_deficient", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace polymesh

#endif // POLYMESH_ERROR_HPP
