// Minimal subprocess harness for CLI tests: runs a command line through
// the shell, capturing exit code, stdout and stderr.
#ifndef CACSIM_TESTS_CLI_HARNESS_HPP
#define CACSIM_TESTS_CLI_HARNESS_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "temp_path.hpp"

namespace cli_harness {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline RunResult run(const std::string& command) {
    const std::string out_path = testutil::make_temp_path();
    const std::string err_path = testutil::make_temp_path();
    const std::string full = command + " >" + out_path + " 2>" + err_path;
    const int status = std::system(full.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

} // namespace cli_harness

#endif
