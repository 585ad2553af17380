#pragma once

#include <stdexcept>

namespace modstar {

// Raised on precondition violations. The CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modstar
