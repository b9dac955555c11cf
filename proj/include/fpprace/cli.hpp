#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpprace {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `fpp_race` command line; args exclude the program name.
///
///   generate | simulate | experiment | diagnose
///   --config <path>  --seed <u64>  --out <dir>  --set key=value (repeatable)
///   simulate also takes --graph <dump>.
/// FPP_RACE_SEED is used when --seed is absent.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace fpprace
