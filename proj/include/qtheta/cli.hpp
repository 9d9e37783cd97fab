#pragma once

namespace qtheta {

// exit codes: 0 success, 1 an asserted invariant failed, 2 usage or config error
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int cli_dispatch(int argc, char** argv);

}  // namespace qtheta
