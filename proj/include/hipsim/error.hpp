#pragma once

#include <stdexcept>
#include <string>

namespace hipsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct AffinelyDependent : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct Unbounded : Error { using Error::Error; };

// process
struct InvalidModel : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };
struct ShrinkNotAllowed : Error { using Error::Error; };

// stats
struct InvalidProbability : Error { using Error::Error; };
struct WindowOverflow : Error { using Error::Error; };

// cli / config
struct ConfigInvalid : Error { using Error::Error; };

}  // namespace hipsim
