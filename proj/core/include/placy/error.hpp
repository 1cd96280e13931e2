#pragma once

#include <stdexcept>
#include <string>

namespace placy {

/// Failure categories surfaced by the library. The CLI maps these onto
/// distinct process exit codes.
enum class errc {
    invalid_input,
    underdetermined,
    degenerate_design,
    singular_restriction,
    insufficient_spectrum,
    degenerate_spectrum,
    series_too_short,
    insufficient_samples,
    dimension_mismatch,
    unusable_column,
    parse_error,
    io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace placy
