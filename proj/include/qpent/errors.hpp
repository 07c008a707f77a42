#ifndef QPENT_ERRORS_HPP
#define QPENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpent {

/// A computation could not produce a trustworthy value (lost bracket,
/// rank-deficient fit, non-finite intermediate). Distinct from domain
/// errors, which reject bad inputs up front.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpent

#endif
