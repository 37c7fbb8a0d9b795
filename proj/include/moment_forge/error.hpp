#ifndef MOMENT_FORGE_ERROR_HPP
#define MOMENT_FORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mforge {

/// Exception carrying the name of the module that raised it. what() is
/// already prefixed, e.g. "groebner: non-simple point set".
class Error : public std::runtime_error {
public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

}  // namespace mforge

#endif  // MOMENT_FORGE_ERROR_HPP
