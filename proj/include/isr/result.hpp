#pragma once

#include "isr/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace isr {

enum class Answer { yes, no, probably_no, budget_exceeded };

inline const char* to_string(Answer a)
{
    switch (a) {
    case Answer::yes:
        return "yes";
    case Answer::no:
        return "no";
    case Answer::probably_no:
        return "probably_no";
    case Answer::budget_exceeded:
        return "budget_exceeded";
    }
    return "?";
}

struct SolveStats {
    std::size_t guesses = 0;
    std::size_t frontier_peak = 0;
    std::size_t nodes_expanded = 0;
    std::size_t trials = 0;
    std::size_t family_size = 0;
    std::size_t meta_path_length = 0;
};

/// Answer of any solver. A yes always carries a validated sequence.
struct SolveResult {
    Answer answer = Answer::no;
    std::optional<ReconfigSequence> sequence;
    SolveStats stats;
    std::string warning;
};

} // namespace isr
