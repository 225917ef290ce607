#ifndef SWARM_CSV_H_
#define SWARM_CSV_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace swarm::csv {

// Floats are written with 9 significant digits so reruns diff cleanly.
std::string FormatDouble(double value);

// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted
// and embedded quotes doubled.
std::string QuoteField(std::string_view field);

void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace swarm::csv

#endif  // SWARM_CSV_H_
