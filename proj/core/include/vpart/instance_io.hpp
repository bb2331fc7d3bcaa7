#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "vpart/instance.hpp"

namespace vpart {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Text format, UTF-8, one item per line, '#' starts a comment line:
//
//   vpart-instance 1
//   n_demand <int>
//   n_supply <int>          real suppliers, dummy excluded
//   n_access <int>          access pairs, dummy pairs included
//   d_max <real>
//   dummy_cost <real>
//   [demands]
//   <id> <x> <y> <m_i>                  n_demand lines
//   [supplies]
//   <id> <x> <y> <s_j> <real|dummy>     n_supply + 1 lines
//   [access]
//   <i> <j> <w_ij>                      n_access lines
//
// Reals are written with 17 significant digits so load(save(x)) == x.
void write_instance(std::ostream& out, const TransportInstance& inst);
TransportInstance read_instance(std::istream& in);

void save_instance(const TransportInstance& inst,
                   const std::filesystem::path& path);
TransportInstance load_instance(const std::filesystem::path& path);

// %.17g rendering used by the text and CSV writers.
std::string format_real(double value);

}  // namespace vpart
