#include "genvec/error.hpp"

namespace genvec {

namespace {

std::string decorate(const std::string &what, std::size_t line,
                     std::size_t column)
{
  if (line == 0 && column == 0)
    return what;

  std::string prefix;
  if (line != 0)
    prefix += "line " + std::to_string(line);
  if (column != 0) {
    if (!prefix.empty())
      prefix += ", ";
    prefix += "column " + std::to_string(column);
  }
  return prefix + ": " + what;
}

} // anonymous namespace

FormatError::FormatError(const std::string &what, std::size_t line,
                         std::size_t column)
  : Error(decorate(what, line, column)),
    _message(what),
    _line(line),
    _column(column)
{}

FormatError FormatError::at_line(std::size_t line) const
{
  return FormatError(_message, line, _column);
}

} // namespace genvec
