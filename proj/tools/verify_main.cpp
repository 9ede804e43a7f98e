// Replays every certificate found in the given JSON files (or stdin for "-").
// Exit 0 when all replay, 1 when one fails or none is found, 3 on unreadable input.
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: toral-verify FILE... (- for stdin)\n";
    return 2;
  }
  int total = 0, failed = 0;
  for (int a = 1; a < argc; ++a) {
    std::string name = argv[a];
    toral::json j;
    try {
      if (name == "-") {
        j = toral::json::parse(std::cin);
      } else {
        std::ifstream in(name);
        if (!in) {
          std::cerr << name << ": cannot open\n";
          return 3;
        }
        j = toral::json::parse(in);
      }
    } catch (const toral::json::exception& e) {
      std::cerr << name << ": " << e.what() << '\n';
      return 3;
    }
    for (const auto& r : toral::cli::verify_all(j)) {
      ++total;
      if (!r.ok) ++failed;
      std::cout << (r.ok ? "ok    " : "FAIL  ") << name << "  " << r.kind << ": " << r.reason << '\n';
    }
  }
  std::cout << total - failed << "/" << total << " certificates replayed\n";
  return total > 0 && failed == 0 ? 0 : 1;
}
