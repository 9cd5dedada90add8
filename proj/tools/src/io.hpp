#pragma once

#include <string>
#include <vector>

#include "nl2f/corpus.hpp"

namespace nl2f::cli {

// "-" means stdin / stdout.
std::string read_input(const std::string& path);
void write_output(const std::string& path, const std::string& content);

std::vector<Example> parse_corpus(const std::string& content);
std::string render_corpus(const std::vector<Example>& corpus);

}  // namespace nl2f::cli
