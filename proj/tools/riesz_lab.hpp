#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riesz::lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDomain = 3;

// args[0] is the program name. Results go to `out` unless --out is given;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riesz::lab
