#pragma once

#include <string>

namespace concat {

inline constexpr const char* kVersion = "0.3.0";

inline std::string platform_triple()
{
#if defined(__x86_64__) || defined(_M_X64)
    std::string arch = "x86_64";
#elif defined(__aarch64__)
    std::string arch = "aarch64";
#else
    std::string arch = "unknown";
#endif
#if defined(__linux__)
    std::string os = "linux-gnu";
#elif defined(__APPLE__)
    std::string os = "darwin";
#elif defined(_WIN32)
    std::string os = "windows";
#else
    std::string os = "unknown";
#endif
    return arch + "-" + os;
}

inline std::string version_line()
{
    return std::string("con-cat ") + kVersion + " " + platform_triple();
}

} // namespace concat
