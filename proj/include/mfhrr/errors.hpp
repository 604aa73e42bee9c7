#ifndef MFHRR_ERRORS_HPP
#define MFHRR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfhrr {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input: polynomial text, problem files, CLI arguments.
struct input_error : error {
    explicit input_error(const std::string& msg, std::size_t position = npos)
        : error(position == npos ? msg : msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t pos;
};

// The critical point of w is not isolated (Milnor number diverges).
struct non_isolated_error : error {
    using error::error;
};

// An Ext computation found an infinite-dimensional cohomology group.
struct infinite_dimensional_error : error {
    using error::error;
};

// The graded method was requested on input that carries no consistent grading.
struct not_gradable_error : error {
    using error::error;
};

// An endomorphism fed to a boundary-bulk or Cardy computation is not a cocycle.
struct not_closed_error : error {
    using error::error;
};

// Sign calibration found no single convention consistent with all probe cases.
struct convention_error : error {
    using error::error;
};

}  // namespace mfhrr

#endif
