// Converts the seizure list of one record in a CHB-MIT summary file into the
// two-column annotation format.
#include <fstream>
#include <iostream>
#include <sstream>

#include "chbmit_summary.hpp"
#include "eegfeat/edf.hpp"
#include "eegfeat/error.hpp"

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: chbmit_annotations <summary.txt> <record.edf name> <out.ann>\n";
    return 2;
  }
  try {
    std::ifstream in(argv[1]);
    if (!in) eegfeat::fail(eegfeat::ErrorCode::io, std::string("cannot open ") + argv[1]);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto seizures = chbmit::parse_summary(ss.str(), argv[2]);
    eegfeat::write_annotations(seizures, argv[3]);
    std::cout << seizures.size() << " seizure interval(s) written to " << argv[3] << '\n';
  } catch (const std::exception& e) {
    std::cerr << "chbmit_annotations: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
