#ifndef MAGQ_ERRORS_HPP
#define MAGQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magq {

// Numerical / physical failure modes. Configuration and argument misuse is
// reported with std::domain_error; everything here derives from
// numerical_error so the CLI can map it to a single exit code.

class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class unsupported_configuration : public numerical_error {
  public:
    explicit unsupported_configuration(const std::string& what) : numerical_error(what) {}
};

class numerical_instability : public numerical_error {
  public:
    explicit numerical_instability(const std::string& what) : numerical_error(what) {}
};

class degenerate_steady_state : public numerical_error {
  public:
    explicit degenerate_steady_state(const std::string& what) : numerical_error(what) {}
};

class singularity_error : public numerical_error {
  public:
    explicit singularity_error(const std::string& what) : numerical_error(what) {}
};

class out_of_band_error : public numerical_error {
  public:
    explicit out_of_band_error(const std::string& what) : numerical_error(what) {}
};

class level_crossing_error : public numerical_error {
  public:
    explicit level_crossing_error(const std::string& what) : numerical_error(what) {}
};

class out_of_region_error : public numerical_error {
  public:
    explicit out_of_region_error(const std::string& what) : numerical_error(what) {}
};

class degenerate_mode_error : public numerical_error {
  public:
    explicit degenerate_mode_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace magq

#endif
