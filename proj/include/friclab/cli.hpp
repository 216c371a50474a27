#pragma once

namespace friclab::cli {

/// Runs one experiment subcommand (drag | simulate | clamp | fgr | spectrum).
/// Exit-code contract: 0 success, 2 configuration error, 3 numerical
/// non-convergence.
int dispatch(int argc, const char* const* argv);

}  // namespace friclab::cli
