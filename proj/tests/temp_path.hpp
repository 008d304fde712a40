#ifndef CACSIM_TESTS_TEMP_PATH_HPP
#define CACSIM_TESTS_TEMP_PATH_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unistd.h>

namespace testutil {

// mkstemp-backed unique path; the file exists (empty) on return.
inline std::string make_temp_path() {
    char tmpl[] = "/tmp/cacsim_test_XXXXXX";
    const int fd = ::mkstemp(tmpl);
    if (fd < 0) throw std::runtime_error("mkstemp failed");
    ::close(fd);
    return tmpl;
}

} // namespace testutil

#endif
