#pragma once

#include "lhs/quantum_core.hpp"

#include <iosfwd>
#include <string>

namespace lhs {

// Shortest representation that round-trips a double exactly (up to 17
// significant digits).
std::string format_g17(double value);

// State file format, one document per state:
//
//   parties: A B1 B2
//   matrix_re:
//   <dim rows of dim whitespace-separated reals>
//   matrix_im:
//   <dim rows of dim whitespace-separated reals>
//
// Matrices are row-major in the computational basis of the party list.
void write_state(std::ostream& out, const QuantumState& state);
void write_state_file(const std::string& path, const QuantumState& state);
QuantumState read_state(std::istream& in);
QuantumState read_state_file(const std::string& path);

} // namespace lhs
