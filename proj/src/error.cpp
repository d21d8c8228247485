#include "koebe/error.hpp"

namespace koebe {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::AsymmetricRotation: return "AsymmetricRotation";
        case Errc::NotSimple: return "NotSimple";
        case Errc::Disconnected: return "Disconnected";
        case Errc::NonPlanarEulerViolation: return "NonPlanarEulerViolation";
        case Errc::NotATriangulation: return "NotATriangulation";
        case Errc::MissingOuterFace: return "MissingOuterFace";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::StrengthNotOne: return "StrengthNotOne";
        case Errc::NotACutset: return "NotACutset";
        case Errc::OverlappingCutsets: return "OverlappingCutsets";
        case Errc::PathNotTerminating: return "PathNotTerminating";
        case Errc::NonPositiveRadius: return "NonPositiveRadius";
        case Errc::MaxIterExceeded: return "MaxIterExceeded";
        case Errc::TooSmall: return "TooSmall";
        case Errc::InconsistentAngles: return "InconsistentAngles";
        case Errc::EmptyAnnulus: return "EmptyAnnulus";
        case Errc::DomainTooThin: return "DomainTooThin";
        case Errc::TooLarge: return "TooLarge";
        case Errc::ZeroProbabilityConditioning: return "ZeroProbabilityConditioning";
        case Errc::SingletonSet: return "SingletonSet";
        case Errc::ZeroDegreeRoot: return "ZeroDegreeRoot";
    }
    return "Unknown";
}

}  // namespace koebe
