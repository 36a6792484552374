#pragma once

namespace leaderscope {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leaderscope
