#pragma once

#include <stdexcept>

namespace subcubes {

/// A configured budget (kernels, seconds, tuples, counter width) was exceeded. Distinct from bad input
/// (std::invalid_argument) and from internal inconsistencies (std::logic_error).
class ResourceAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace subcubes
