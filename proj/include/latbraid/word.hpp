#pragma once

#include <string>
#include <utility>
#include <vector>

namespace latbraid {

// A signed generator: (graph edge, +1 CCW / -1 CW).
using SignedGen = std::pair<int, int>;

// Pairwise vertex-disjoint signed generators executed simultaneously.
struct Operation {
    std::vector<SignedGen> gens;

    bool operator==(const Operation& o) const { return gens == o.gens; }
    bool operator<(const Operation& o) const { return gens < o.gens; }
};

struct BraidWord {
    std::vector<Operation> ops;

    int length() const { return static_cast<int>(ops.size()); }
    bool operator==(const BraidWord& o) const { return ops == o.ops; }
    bool operator<(const BraidWord& o) const { return ops < o.ops; }
};

class LatticeModel;

// Grammar: operations separated by whitespace; generators within one operation
// comma-separated; a negative index is the CW inverse ("1,9 4,6 3,8 2,7").
BraidWord parse_word(const LatticeModel& model, const std::string& text);
std::string format_word(const BraidWord& word);

}  // namespace latbraid
