#pragma once

#include <iosfwd>
#include <optional>

namespace artifact {

// Name of the environment variable that overrides the default precision.
inline constexpr const char* kPrecisionEnv = "ARTIFACT_PREC";

// Value of ARTIFACT_PREC, read on the first call and cached. Throws
// std::invalid_argument if it is set but not an integer >= 64.
std::optional<long> env_precision();

// Exit codes: 0 success, 1 failed verification, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace artifact
