#ifndef F2LIN_VERSION_HPP
#define F2LIN_VERSION_HPP

namespace f2lin {
inline constexpr const char* kVersion = "1.0.0";
}

#endif
