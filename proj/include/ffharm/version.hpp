#pragma once

namespace ffharm {

inline constexpr const char* kVersion = "0.1.0";

}
