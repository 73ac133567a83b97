#pragma once

// Text formats.
//
// Matrix: first line "rows cols", then `rows` lines of `cols` characters from
// {0,1}, most significant row first. A matrix-set file is s such blocks back
// to back, all square and of equal size.
//
// Net: header line "s m N", then N lines of s space-separated m-character bit
// strings (digit 1 = most significant first).

#include <string>

#include "net.hpp"

namespace dyadnet {

std::string format_matrix(const BitMatrix& m);
std::string format_matrix_set(const GeneratingMatrixSet& g);
std::string format_net(const DigitalNet& p);

BitMatrix parse_matrix(const std::string& text);
GeneratingMatrixSet parse_matrix_set(const std::string& text);
DigitalNet parse_net(const std::string& text);

} // namespace dyadnet
