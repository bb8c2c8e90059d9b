#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nmk/waiting_time.hpp"

namespace nmk {

/// Parse failure with 1-based source position.
class WtdParseError : public std::runtime_error {
  public:
    WtdParseError(const std::string& what, int line, int col)
        : std::runtime_error(what), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

/// Recursive-descent parser for the waiting-time DSL:
///   wtd    := "exp(" RATE ")" | "erlang(" INT "," RATE ")"
///           | "conv(" wtd ("," wtd)+ ")" | "mix(" branch ("," branch)+ ")"
///   branch := WEIGHT ":" wtd
/// Whitespace is insignificant. Structural errors throw WtdParseError with
/// position; semantic problems (bad rates, weight sums) are left to
/// validate().
WaitingTimeSpec parse_wtd(std::string_view input);

/// Canonical printer; parse_wtd(print_wtd(s)) reproduces s exactly.
std::string print_wtd(const WaitingTimeSpec& spec);

/// JSON form of the same tree, for machine callers:
///   {"type":"exp","rate":1}  {"type":"erlang","shape":2,"rate":1}
///   {"type":"conv","children":[...]}
///   {"type":"mix","branches":[{"weight":w,"child":{...}},...]}
WaitingTimeSpec wtd_from_json(const std::string& json_text);
std::string wtd_to_json(const WaitingTimeSpec& spec);

}  // namespace nmk
