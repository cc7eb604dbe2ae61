// Regenerates the golden regression file from the principal-value oracle.

#include <fstream>
#include <iostream>

#include "harvest/verify.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_golden <output.json>\n";
    return 2;
  }
  nlohmann::json doc;
  doc["source"] = "pv_oracle";
  for (const auto& gc : harvest::golden_cases()) {
    const auto v = gc.compute(harvest::Backend::Oracle);
    doc["cases"][gc.name] = {{"re", v.real()}, {"im", v.imag()}};
    std::cerr << gc.name << " " << v.real() << " " << v.imag() << "\n";
  }
  std::ofstream out(argv[1]);
  out << doc.dump(2) << "\n";
  return out ? 0 : 1;
}
