#pragma once

#include <stdexcept>
#include <string>

namespace rppg {

// Error taxonomy. Codes group into the three failure classes the CLI
// distinguishes: bad input (2), no usable signal (3), internal fault (4).
enum class errc {
    // input / format
    missing_file,
    bad_manifest,
    missing_fps,
    dimension_mismatch,
    bad_window_length,
    bad_scales,
    bad_params,
    length_mismatch,
    patch_out_of_bounds,
    too_few_frames,
    too_short,
    // no-signal
    no_peak,
    empty_field,
    // search / internal
    no_params_found,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::missing_file:        return "MissingFile";
        case errc::bad_manifest:        return "BadManifest";
        case errc::missing_fps:         return "MissingFps";
        case errc::dimension_mismatch:  return "DimensionMismatch";
        case errc::bad_window_length:   return "BadWindowLength";
        case errc::bad_scales:          return "BadScales";
        case errc::bad_params:          return "BadParams";
        case errc::length_mismatch:     return "LengthMismatch";
        case errc::patch_out_of_bounds: return "PatchOutOfBounds";
        case errc::too_few_frames:      return "TooFewFrames";
        case errc::too_short:           return "TooShort";
        case errc::no_peak:             return "NoPeak";
        case errc::empty_field:         return "EmptyField";
        case errc::no_params_found:     return "NoParamsFound";
        case errc::internal:            return "Internal";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Exit code classes used by the CLI.
inline int exit_code_for(errc c) {
    switch (c) {
        case errc::no_peak:
        case errc::empty_field:
            return 3;
        case errc::no_params_found:
        case errc::internal:
            return 4;
        default:
            return 2;
    }
}

} // namespace rppg
