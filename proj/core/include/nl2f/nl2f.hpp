#pragma once

#include "nl2f/comparator.hpp"
#include "nl2f/corpus.hpp"
#include "nl2f/dataset.hpp"
#include "nl2f/error.hpp"
#include "nl2f/eval.hpp"
#include "nl2f/formula.hpp"
#include "nl2f/hashing.hpp"
#include "nl2f/interpreter.hpp"
#include "nl2f/llm.hpp"
#include "nl2f/runner.hpp"
#include "nl2f/table.hpp"
#include "nl2f/validators.hpp"
