#ifndef CACSIM_ERRORS_HPP
#define CACSIM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cacsim {

// Bad scenario/configuration input (unknown keys, dimension mismatches,
// out-of-range parameters). CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A class (or set of classes) cannot be supported at all under the given
// system parameters, e.g. a nonpositive power-ratio numerator or a zero
// capacity threshold. CLI maps this to exit code 3.
class infeasibility_error : public std::runtime_error {
public:
    infeasibility_error(const std::string& what, std::vector<int> classes = {})
        : std::runtime_error(what), classes_(std::move(classes)) {}

    const std::vector<int>& classes() const { return classes_; }

private:
    std::vector<int> classes_;
};

// File-system level failure (missing node file, unwritable output).
// CLI maps this to exit code 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cacsim

#endif
