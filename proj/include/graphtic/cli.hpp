#pragma once

namespace graphtic {

/// Full command-line front-end. Returns the process exit status: 0 on
/// success, 2 when an input file is missing, 1 on any other error.
int run_cli(int argc, char** argv);

}  // namespace graphtic
