#pragma once

namespace qaoa {

inline constexpr const char* kVersion = "qaoa-bench 0.1.0";

}  // namespace qaoa
