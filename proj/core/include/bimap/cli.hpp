#pragma once

// Command-line surface: bimap map | align | eval | optimize | synth | plot.
// run_cli is the whole program; tools/bimap.cpp wraps it in main().

namespace bimap::cli {

int run_cli(int argc, const char* const* argv);

}  // namespace bimap::cli
