#pragma once

#include <cstdint>

// Field/bit operation counter used by the complexity tests. Define
// THRESEC_DISABLE_OPCOUNT to compile it out entirely.

namespace thresec::opcount {

#ifndef THRESEC_DISABLE_OPCOUNT

inline thread_local std::uint64_t g_ops = 0;

inline void bump(std::uint64_t n = 1) { g_ops += n; }
inline void reset() { g_ops = 0; }
inline std::uint64_t total() { return g_ops; }

#else

inline void bump(std::uint64_t = 1) {}
inline void reset() {}
inline std::uint64_t total() { return 0; }

#endif

}  // namespace thresec::opcount
