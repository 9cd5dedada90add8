#include "io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "nl2f/error.hpp"

namespace nl2f::cli {

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out.flush()) throw Error("failed writing " + path);
}

std::vector<Example> parse_corpus(const std::string& content) {
  std::istringstream in(content);
  return load_corpus(in);
}

std::string render_corpus(const std::vector<Example>& corpus) {
  std::ostringstream out;
  save_corpus(corpus, out);
  return out.str();
}

}  // namespace nl2f::cli
