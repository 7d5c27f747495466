#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mubqt {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitCertification = 3,
  kExitNumerical = 4,
};

/// Entry point of the `mubqt` tool. `args` excludes the program name.
///
/// Subcommands: mub, simulate, reconstruct, pattern, fidelity. Random streams
/// derive from the master seed (config noise.seed, or --seed): stream 0 drives
/// count acquisition, stream 1 the bootstrap.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mubqt
