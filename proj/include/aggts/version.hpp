#ifndef AGGTS_VERSION_HPP
#define AGGTS_VERSION_HPP

namespace aggts {

inline constexpr const char* kVersion = "0.1.0";

} // namespace aggts

#endif
