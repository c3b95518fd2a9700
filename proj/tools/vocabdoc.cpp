// Writes the vocabulary reference (Markdown) to stdout or to the given file.
#include <fstream>
#include <iostream>

#include "trust/vocab.hpp"

int main(int argc, char** argv) {
  const std::string doc = trust::vocabulary_reference_markdown();
  if (argc < 2) {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(argv[1], std::ios::binary);
  out << doc;
  if (!out) {
    std::cerr << "cannot write " << argv[1] << "\n";
    return 3;
  }
  return 0;
}
