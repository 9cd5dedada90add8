#pragma once

#include <string_view>

// Text files from core/share compiled into the library.
namespace nl2f::resources {

std::string_view prompt_annotate();
std::string_view prompt_output_prediction();
std::string_view prompt_program_generation();
std::string_view prompt_classification();
std::string_view prompt_formula_prediction();
std::string_view deprecated_functions();

}  // namespace nl2f::resources
