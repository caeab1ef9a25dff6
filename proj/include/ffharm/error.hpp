#pragma once

#include <stdexcept>
#include <string>

namespace ffharm {

// Every throwing path in the library uses this type. `code` is a stable
// machine-readable tag (e.g. "EvenCharacteristic", "GridTooLarge"); what()
// is "<code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}
