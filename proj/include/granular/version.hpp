#ifndef GRANULAR_VERSION_HPP
#define GRANULAR_VERSION_HPP

namespace granular {

inline constexpr const char* version = "0.1.0";

} // namespace granular

#endif // GRANULAR_VERSION_HPP
