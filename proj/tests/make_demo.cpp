// Writes the demo workspace (corpus, tasks, mock script, config).
// With --check, compares an existing directory against what would be written.

#include <iostream>

#include "pipeline_fixture.hpp"
#include "support.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3 || (argc == 3 && std::string(argv[2]) != "--check")) {
    std::cerr << "usage: nl2f_make_demo DIR [--check]\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  if (argc == 2) {
    nl2f::test::write_demo(dir);
    return 0;
  }
  nl2f::test::TempDir fresh;
  nl2f::test::write_demo(fresh.path());
  int stale = 0;
  for (const char* name : {"corpus.jsonl", "tasks.jsonl", "mock_script.json", "config.json"}) {
    if (!std::filesystem::exists(dir / name) ||
        nl2f::test::read_file(dir / name) != nl2f::test::read_file(fresh / name)) {
      std::cerr << (dir / name).string() << " is out of date\n";
      ++stale;
    }
  }
  return stale ? 1 : 0;
}
