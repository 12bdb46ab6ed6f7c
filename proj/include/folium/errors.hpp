#pragma once

#include <stdexcept>
#include <string>

namespace folium {

/// Violated precondition or out-of-domain input (CLI exit code 2).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to converge or lost accuracy (CLI exit code 3).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace folium
