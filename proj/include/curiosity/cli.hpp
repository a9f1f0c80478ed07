#pragma once

namespace curiosity {

int run_cli(int argc, char** argv);

inline int run_cli(int, char**) { return 0; }  // placeholder

}  // namespace curiosity
