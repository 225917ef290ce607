#include "swarm/csv.h"
#include "swarm/tda.h"

namespace swarm {

void WriteBarcodeCsv(std::ostream& out, const Barcode& barcode) {
  csv::WriteRow(out, {"dim", "birth", "death"});
  for (const PersistenceInterval& iv : barcode.intervals) {
    csv::WriteRow(out, {std::to_string(iv.dim), std::to_string(iv.birth),
                        iv.infinite() ? "-1" : std::to_string(iv.death)});
  }
}

void WritePerseus(std::ostream& out, const PixelGrid& pixels) {
  out << "2\n" << pixels.width << '\n' << pixels.height << '\n';
  for (std::uint8_t v : pixels.intensity) out << static_cast<int>(v) << '\n';
}

}  // namespace swarm
