#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace koebe {

enum class Errc {
    InvalidInput,
    AsymmetricRotation,
    NotSimple,
    Disconnected,
    NonPlanarEulerViolation,
    NotATriangulation,
    MissingOuterFace,
    SingularSystem,
    StrengthNotOne,
    NotACutset,
    OverlappingCutsets,
    PathNotTerminating,
    NonPositiveRadius,
    MaxIterExceeded,
    TooSmall,
    InconsistentAngles,
    EmptyAnnulus,
    DomainTooThin,
    TooLarge,
    ZeroProbabilityConditioning,
    SingletonSet,
    ZeroDegreeRoot,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, int index = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), index_(index) {}

    Errc code() const noexcept { return code_; }
    // Offending item (cutset number, vertex, edge) when the error names one.
    int index() const noexcept { return index_; }

private:
    Errc code_;
    int index_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what, int index = -1) {
    throw Error(code, what, index);
}

}  // namespace koebe
