#pragma once

#include <map>
#include <string>
#include <string_view>

namespace wmink::io {

/**
 * Maps JSON pointers ("/atoms/2/mass") to the 1-based line where the value
 * starts. Expects syntactically valid JSON; unknown pointers map to 0.
 */
class JsonLocator {
 public:
  JsonLocator() = default;
  explicit JsonLocator(std::string_view text);

  int line_of(const std::string& pointer) const;

 private:
  std::map<std::string, int> lines_;
};

/// Line (1-based) containing byte offset `pos`.
int line_at(std::string_view text, std::size_t pos);

}  // namespace wmink::io
