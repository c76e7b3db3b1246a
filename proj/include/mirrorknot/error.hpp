#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mirrorknot {

// Error kinds reported by the library. The CLI prints the kind name verbatim.
enum class errc {
    virtual_unsupported,
    shape_error,
    label_error,
    ambiguous_shape,
    range_error,
    dimension_mismatch,
    not_a_curl,
    not_a_bigon,
    sign_mismatch,
    not_a_triangle,
    pattern_not_found,
    budget_exceeded,
    not_alternating,
    not_representable,
    too_large,
    too_many_crossings,
    parameter_out_of_range,
    unknown,
    io_error,
    usage_error,
};

constexpr std::string_view errc_name(errc e) noexcept
{
    switch (e) {
    case errc::virtual_unsupported: return "VirtualUnsupported";
    case errc::shape_error: return "ShapeError";
    case errc::label_error: return "LabelError";
    case errc::ambiguous_shape: return "AmbiguousShape";
    case errc::range_error: return "RangeError";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_a_curl: return "NotACurl";
    case errc::not_a_bigon: return "NotABigon";
    case errc::sign_mismatch: return "SignMismatch";
    case errc::not_a_triangle: return "NotATriangle";
    case errc::pattern_not_found: return "PatternNotFound";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_alternating: return "NotAlternating";
    case errc::not_representable: return "NotRepresentable";
    case errc::too_large: return "TooLarge";
    case errc::too_many_crossings: return "TooManyCrossings";
    case errc::parameter_out_of_range: return "ParameterOutOfRange";
    case errc::unknown: return "Unknown";
    case errc::io_error: return "IoError";
    case errc::usage_error: return "UsageError";
    }
    return "Error";
}

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what) : std::runtime_error(what), m_code(code) {}

    errc code() const noexcept { return m_code; }
    std::string_view name() const noexcept { return errc_name(m_code); }

private:
    errc m_code;
};

[[noreturn]] inline void fail(errc code, const std::string &what)
{
    throw error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace mirrorknot
