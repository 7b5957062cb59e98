#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ruit {

/// A configured budget (prover nodes, DAG size, variable count) was exhausted.
/// Never to be read as a negative verdict.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A transformer or operation was handed input violating its precondition.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace ruit
