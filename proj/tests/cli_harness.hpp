// Runs the built CLI binary and captures exit code, stdout and stderr.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace wtest {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string err_path = "/tmp/waterfall_cli_err_" + std::to_string(getpid()) + "_" +
                                 std::to_string(counter++);
    const std::string cmd = std::string(WATERFALL_CLI_PATH) + " " + args + " 2>" + err_path;

    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.code = WEXITSTATUS(status);

    std::ifstream err_in(err_path);
    std::ostringstream err_buf;
    err_buf << err_in.rdbuf();
    result.err = err_buf.str();
    std::remove(err_path.c_str());
    return result;
}

inline std::string data_file(const std::string& name) {
    return std::string(WATERFALL_TEST_DATA) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace wtest
